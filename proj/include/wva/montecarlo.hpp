#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wva/noise.hpp"

namespace wva {

enum class Basis { X, P };

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    Basis basis = Basis::X;
    NoiseConfig noise = NoiseConfig::none();
    /// Test hook: when false every trial is accepted, which turns the run
    /// into a plain sample of the prior readout distribution.
    bool postselect = true;
};

/// Sample statistics of one simulation run. Standard errors come from the
/// accepted-sample moments (binomial for gamma_hat).
struct McEstimate {
    std::uint64_t n_total = 0;
    std::uint64_t n_accepted = 0;
    double gamma_hat = 0, gamma_se = 0;
    double mean_hat = 0, mean_se = 0;
    double second_moment_hat = 0, second_moment_se = 0;
    double var_hat = 0, var_se = 0;
    /// No trial was accepted: moment fields are meaningless.
    bool degenerate = false;
};

/// Trial-level simulation of measurement plus postselection: draw the noise
/// shift, draw the readout from the prior, condition the system state on the
/// readout, then accept with probability <f|rho_tilde|f>. Deterministic for
/// a fixed (seed, trials, threads).
McEstimate run_trials(const PureState& pre, const PureState& post,
                      const MeterConfig& m, const McConfig& cfg,
                      unsigned threads = 1);

struct McCheck {
    std::string quantity;
    double analytic = 0;
    double empirical = 0;
    double std_error = 0;
    double z = 0;
    bool pass = false;
};

struct McValidation {
    std::string case_name;
    bool pass = false;
    std::vector<McCheck> checks;
    McEstimate estimate;
};

/// Runs the simulation and z-tests gamma, mean and second moment against
/// the closed forms (quadrature-backed gamma for momentum jitter). Pass
/// means |z| <= 4 for every statistic. `corrupt_reference` shifts each
/// analytic value by +10 standard errors; it exists so the harness can
/// prove it fails when it should.
McValidation validate_against_analytics(const PureState& pre, const PureState& post,
                                        const MeterConfig& m, const McConfig& cfg,
                                        unsigned threads = 1,
                                        bool corrupt_reference = false,
                                        const std::string& case_name = "");

} // namespace wva
