#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wva {

/// Locale-independent formatting at full double precision (17 significant
/// digits, shortest form); "nan"/"inf" spellings are fixed.
std::string format_double(double v);

/// Minimal CSV emitter: comma separator, LF line endings, no quoting (the
/// writers only emit numbers and identifier-safe status strings).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    void line(const std::vector<std::string>& cells);
    std::ostream& out_;
};

} // namespace wva
