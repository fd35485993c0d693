#include "wva/csv.hpp"

#include <charconv>
#include <cmath>

namespace wva {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void CsvWriter::header(const std::vector<std::string>& columns) { line(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) { line(cells); }

void CsvWriter::line(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out_ << ',';
        out_ << cells[k];
    }
    out_ << '\n';
}

} // namespace wva
