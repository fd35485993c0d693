#pragma once

#include "wva/config.hpp"
#include "wva/montecarlo.hpp"

namespace wva {

/// One validation case: the pre-state is (|1> + |2>)/sqrt(2), the
/// postselection state comes from (theta, phi).
struct McCase {
    std::string name;
    double theta = 0;
    double phi = 0;
    double d = 1;
    double sigma = 1;
    Basis basis = Basis::X;
    NoiseConfig noise = NoiseConfig::none();
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;  ///< 0: derive from the suite seed and case index
    bool corrupt = false;    ///< harness self-test: shift references by +10 se
};

/// Eight cases spanning both bases and all noise kinds at N = 1e6.
std::vector<McCase> default_validation_suite();

/// Reads [case] sections (keys: name, basis = x|p, noise = none|x0|p0,
/// width, theta, phi, d, sigma, trials, seed, corrupt). Throws
/// SpecParseError with line diagnostics.
std::vector<McCase> parse_validation_suite(const Config& cfg);

struct SuiteResult {
    bool all_pass = false;
    std::vector<McValidation> results;
};

SuiteResult run_validation_suite(const std::vector<McCase>& cases,
                                 std::uint64_t suite_seed, unsigned threads,
                                 std::uint64_t trials_override = 0);

/// Flat JSON array with one object per (case, quantity) check:
/// {case, quantity, analytic, empirical, std_error, z, pass}.
std::string suite_report_json(const SuiteResult& suite);

} // namespace wva
