#include "wva/mc_validate.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "wva/rng.hpp"

namespace wva {

namespace {

constexpr double kPi = std::numbers::pi;

McCase make_case(std::string name, double theta, double phi, double d, double sigma,
                 Basis basis, NoiseConfig noise) {
    McCase c;
    c.name = std::move(name);
    c.theta = theta;
    c.phi = phi;
    c.d = d;
    c.sigma = sigma;
    c.basis = basis;
    c.noise = noise;
    return c;
}

} // namespace

std::vector<McCase> default_validation_suite() {
    std::vector<McCase> cases;
    // x-basis: d = 2 sigma sqrt(g) with sigma = 1
    cases.push_back(make_case("x_plain_weak", 1.3 * kPi, 0.0, 2.0 * std::sqrt(0.05),
                              1.0, Basis::X, NoiseConfig::none()));
    cases.push_back(make_case("x_plain_anomalous", 1.49 * kPi, 0.0,
                              2.0 * std::sqrt(0.1), 1.0, Basis::X,
                              NoiseConfig::none()));
    cases.push_back(make_case("x_jitter_wide", 1.3 * kPi, 0.0, 2.0 * std::sqrt(0.05),
                              1.0, Basis::X, NoiseConfig::x0(2.0)));
    cases.push_back(make_case("x_jitter_narrow", 1.6 * kPi, 0.0, 2.0 * std::sqrt(0.2),
                              1.0, Basis::X, NoiseConfig::x0(0.5)));
    // p-basis: the Fig. 5/6 operating points
    cases.push_back(make_case("p_plain", 1.49 * kPi, kPi / 4.0, 1.0, 10.0, Basis::P,
                              NoiseConfig::none()));
    cases.push_back(make_case("p_x0_immune", 1.49 * kPi, kPi / 4.0, 1.0, 10.0,
                              Basis::P, NoiseConfig::x0(10.0)));
    cases.push_back(make_case("p_jitter_peak", 1.49 * kPi, kPi / 4.0, 1.0, 100.0,
                              Basis::P, NoiseConfig::p0(0.316)));
    cases.push_back(make_case("p_jitter_weak", 1.49 * kPi, kPi / 4.0, 1.0, 10.0,
                              Basis::P, NoiseConfig::p0(0.1)));
    return cases;
}

std::vector<McCase> parse_validation_suite(const Config& cfg) {
    std::vector<McCase> cases;
    const auto sections = cfg.sections("case");
    if (sections.empty())
        throw SpecParseError(0, "validation config has no [case] sections");
    int index = 0;
    for (const auto* sec : sections) {
        ++index;
        McCase c;
        c.name = sec->get("name").value_or("case" + std::to_string(index));
        c.theta = parse_real(sec->require("theta"), sec->line);
        if (auto v = sec->get("phi")) c.phi = parse_real(*v, sec->line);
        if (auto v = sec->get("d")) c.d = parse_real(*v, sec->line);
        if (auto v = sec->get("sigma")) c.sigma = parse_real(*v, sec->line);

        const std::string basis = sec->get("basis").value_or("x");
        if (basis == "x" || basis == "X")
            c.basis = Basis::X;
        else if (basis == "p" || basis == "P")
            c.basis = Basis::P;
        else
            throw SpecParseError(sec->line, "basis must be x or p, got '" + basis + "'");

        const std::string noise = sec->get("noise").value_or("none");
        const double width =
            sec->get("width") ? parse_real(*sec->get("width"), sec->line) : 0.0;
        if (noise == "none")
            c.noise = NoiseConfig::none();
        else if (noise == "x0")
            c.noise = NoiseConfig::x0(width);
        else if (noise == "p0")
            c.noise = NoiseConfig::p0(width);
        else
            throw SpecParseError(sec->line, "noise must be none, x0 or p0, got '" + noise + "'");

        if (auto v = sec->get("trials")) {
            const auto n = parse_int(*v, sec->line);
            if (n < 1) throw SpecParseError(sec->line, "trials must be >= 1");
            c.trials = static_cast<std::uint64_t>(n);
        }
        if (auto v = sec->get("seed"))
            c.seed = static_cast<std::uint64_t>(parse_int(*v, sec->line));
        if (auto v = sec->get("corrupt"))
            c.corrupt = (*v == "true" || *v == "1");
        cases.push_back(c);
    }
    return cases;
}

SuiteResult run_validation_suite(const std::vector<McCase>& cases,
                                 std::uint64_t suite_seed, unsigned threads,
                                 std::uint64_t trials_override) {
    SuiteResult suite;
    suite.all_pass = true;
    unsigned index = 0;
    for (const auto& c : cases) {
        const PureState pre(Complex(1, 0), Complex(1, 0));
        const PureState post = state_from_angles(c.theta, c.phi);
        const MeterConfig m(c.d, c.sigma);
        McConfig mc;
        mc.trials = trials_override ? trials_override : c.trials;
        mc.seed = c.seed ? c.seed : worker_seed(suite_seed, index);
        mc.basis = c.basis;
        mc.noise = c.noise;
        auto result = validate_against_analytics(pre, post, m, mc, threads,
                                                 c.corrupt, c.name);
        suite.all_pass = suite.all_pass && result.pass;
        suite.results.push_back(std::move(result));
        ++index;
    }
    return suite;
}

std::string suite_report_json(const SuiteResult& suite) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : suite.results) {
        for (const auto& c : r.checks) {
            arr.push_back({{"case", r.case_name},
                           {"quantity", c.quantity},
                           {"analytic", c.analytic},
                           {"empirical", c.empirical},
                           {"std_error", c.std_error},
                           {"z", c.z},
                           {"pass", c.pass}});
        }
    }
    return arr.dump(2) + "\n";
}

} // namespace wva
