#include "wva/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>

namespace wva {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

std::optional<std::string> Config::Section::get(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return e.value;
    return std::nullopt;
}

std::string Config::Section::require(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw SpecParseError(line, "section [" + name + "] is missing key '" + key + "'");
}

Config Config::parse(std::istream& in) {
    Config cfg;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string stripped = raw;
        if (auto pos = stripped.find_first_of("#;"); pos != std::string::npos)
            stripped.erase(pos);
        stripped = trim(stripped);
        if (stripped.empty()) continue;

        if (stripped.front() == '[') {
            if (stripped.back() != ']' || stripped.size() < 3)
                throw SpecParseError(lineno, "malformed section header '" + raw + "'");
            cfg.sections_.push_back(
                {trim(stripped.substr(1, stripped.size() - 2)), lineno, {}});
            continue;
        }

        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw SpecParseError(lineno, "expected 'key = value', got '" + raw + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw SpecParseError(lineno, "empty key");
        if (cfg.sections_.empty())
            throw SpecParseError(lineno, "key '" + key + "' appears before any [section]");
        cfg.sections_.back().entries.push_back({key, value, lineno});
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    return parse(in);
}

std::vector<const Config::Section*> Config::sections(const std::string& name) const {
    std::vector<const Section*> out;
    for (const auto& s : sections_)
        if (s.name == name) out.push_back(&s);
    return out;
}

const Config::Section* Config::find(const std::string& name) const {
    for (const auto& s : sections_)
        if (s.name == name) return &s;
    return nullptr;
}

double parse_real(const std::string& text, int line) {
    std::string body = trim(text);
    double factor = 1.0;
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        body = trim(body.substr(0, body.size() - 2));
        if (body.empty() || body == "-" || body == "+")
            body += "1";
    }
    double v = 0.0;
    const char* first = body.data();
    const char* last = body.data() + body.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw SpecParseError(line, "not a number: '" + text + "'");
    return v * factor;
}

std::int64_t parse_int(const std::string& text, int line) {
    const std::string body = trim(text);
    std::int64_t v = 0;
    const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
    if (res.ec != std::errc{} || res.ptr != body.data() + body.size())
        throw SpecParseError(line, "not an integer: '" + text + "'");
    return v;
}

} // namespace wva
