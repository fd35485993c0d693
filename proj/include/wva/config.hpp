#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "wva/errors.hpp"

namespace wva {

/// Declarative key-value config with repeatable [section] blocks:
///
///   # comment
///   [scan]
///   quantity = crb_slack
///   [axis]
///   var = g
///   min = 1e-4
///   max = 1
///   points = 20
///   scale = log
///
/// Real values accept a "pi" suffix (e.g. theta = 1.3pi).
class Config {
public:
    struct Entry {
        std::string key;
        std::string value;
        int line;
    };
    struct Section {
        std::string name;
        int line;
        std::vector<Entry> entries;

        std::optional<std::string> get(const std::string& key) const;
        std::string require(const std::string& key) const; // throws SpecParseError
    };

    /// Throws SpecParseError with line diagnostics.
    static Config parse(std::istream& in);
    static Config parse_file(const std::string& path);

    const std::vector<Section>& sections() const { return sections_; }
    std::vector<const Section*> sections(const std::string& name) const;
    const Section* find(const std::string& name) const;

private:
    std::vector<Section> sections_;
};

/// Parses a real number, accepting a trailing "pi" multiplier. Throws
/// SpecParseError referencing `line` on garbage.
double parse_real(const std::string& text, int line);

std::int64_t parse_int(const std::string& text, int line);

} // namespace wva
