#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wva/mc_validate.hpp"
#include "wva/montecarlo.hpp"

using namespace wva;
using std::numbers::pi;

namespace {

const PureState kPre(Complex(1, 0), Complex(1, 0));

McConfig config(Basis basis, NoiseConfig noise, std::uint64_t trials,
                std::uint64_t seed) {
    McConfig cfg;
    cfg.basis = basis;
    cfg.noise = noise;
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

bool within(double value, double reference, double se, double n_sigmas = 4.0) {
    return std::abs(value - reference) <= n_sigmas * se;
}

} // namespace

TEST_CASE("trivial postselection at vanishing strength accepts everything") {
    const MeterConfig m(2e-5, 1.0);
    const auto est = run_trials(kPre, kPre, m, config(Basis::X, NoiseConfig::none(), 200000, 7));
    CHECK(within(est.gamma_hat, 1.0, std::max(est.gamma_se, 1e-5)));
    CHECK(within(est.mean_hat, 0.0, est.mean_se));
}

TEST_CASE("x-basis estimates match the closed forms at N = 1e6") {
    const auto post = state_from_angles(1.3 * pi, 0.0);
    const MeterConfig m(2.0 * std::sqrt(0.05), 1.0);
    const auto est = run_trials(kPre, post, m, config(Basis::X, NoiseConfig::none(), 1000000, 99));

    CHECK(within(est.gamma_hat, postselection_probability_x(kPre, post, m), est.gamma_se));
    CHECK(within(est.mean_hat, amplified_mean_x(kPre, post, m), est.mean_se));
    CHECK(within(est.var_hat, postselected_variance_x(kPre, post, m), est.var_se));
}

TEST_CASE("p-basis empirical SNR matches the closed form at the noise optimum") {
    const auto post = state_from_angles(1.49 * pi, pi / 4.0);
    const MeterConfig m(1.0, 100.0);
    const double jp = 0.3178;
    const auto rep = p_basis_p0_moments(kPre, post, m, jp);
    const auto est =
        run_trials(kPre, post, m, config(Basis::P, NoiseConfig::p0(jp), 1000000, 4242));

    const double snr_emp =
        std::sqrt(est.gamma_hat) * est.mean_hat / std::sqrt(est.var_hat);
    // first-order error propagation through sqrt(gamma) mean / sd
    const double snr_se =
        std::abs(snr_emp) *
        std::sqrt(std::pow(est.gamma_se / (2.0 * est.gamma_hat), 2) +
                  std::pow(est.mean_se / est.mean_hat, 2) +
                  std::pow(est.var_se / (2.0 * est.var_hat), 2));
    CHECK(within(snr_emp, rep.snr, snr_se));
}

TEST_CASE("mixture sampling is correct when postselection is disabled") {
    SUBCASE("x-basis prior moments") {
        const auto pre = state_from_angles(0.7 * pi, 0.3);
        const auto rho = DensityMatrix::from_pure(pre);
        const MeterConfig m(1.4, 0.9);
        auto cfg = config(Basis::X, NoiseConfig::none(), 400000, 5);
        cfg.postselect = false;
        const auto est = run_trials(pre, kPre, m, cfg);
        CHECK(est.n_accepted == est.n_total);
        const double imbalance = rho.r11() - rho.r22();
        CHECK(within(est.mean_hat, m.d() * imbalance, est.mean_se));
        const double var = m.sigma() * m.sigma() +
                           m.d() * m.d() * (1.0 - imbalance * imbalance);
        CHECK(within(est.var_hat, var, est.var_se));
    }

    SUBCASE("p-basis prior moments include the jitter variance") {
        const MeterConfig m(1.0, 10.0);
        auto cfg = config(Basis::P, NoiseConfig::p0(0.2), 400000, 6);
        cfg.postselect = false;
        const auto est = run_trials(kPre, kPre, m, cfg);
        CHECK(within(est.mean_hat, 0.0, est.mean_se));
        const double var = 1.0 / (4.0 * m.sigma() * m.sigma()) + 0.2 * 0.2;
        CHECK(within(est.var_hat, var, est.var_se));
    }
}

TEST_CASE("determinism") {
    const auto post = state_from_angles(1.3 * pi, 0.0);
    const MeterConfig m(0.5, 1.0);
    const auto cfg = config(Basis::X, NoiseConfig::x0(0.7), 50000, 123);

    SUBCASE("sequential runs are bit-identical") {
        const auto a = run_trials(kPre, post, m, cfg, 1);
        const auto b = run_trials(kPre, post, m, cfg, 1);
        CHECK(a.n_accepted == b.n_accepted);
        CHECK(a.mean_hat == b.mean_hat);
        CHECK(a.var_hat == b.var_hat);
        CHECK(a.second_moment_hat == b.second_moment_hat);
    }

    SUBCASE("parallel runs are bit-identical for a fixed worker count") {
        const auto a = run_trials(kPre, post, m, cfg, 3);
        const auto b = run_trials(kPre, post, m, cfg, 3);
        CHECK(a.n_accepted == b.n_accepted);
        CHECK(a.mean_hat == b.mean_hat);
        CHECK(a.var_hat == b.var_hat);
    }

    SUBCASE("parallel statistics agree with sequential within errors") {
        const auto seq = run_trials(kPre, post, m, cfg, 1);
        const auto par = run_trials(kPre, post, m, cfg, 4);
        CHECK(within(par.mean_hat, seq.mean_hat,
                     std::hypot(par.mean_se, seq.mean_se), 5.0));
    }
}

TEST_CASE("momentum-basis runs ignore position jitter exactly") {
    const auto post = state_from_angles(1.49 * pi, pi / 4.0);
    const MeterConfig m(1.0, 10.0);
    // same stream, different jitter width: the x0 draw occupies the same
    // slot and shifts nothing, so the runs coincide bit for bit
    const auto narrow = run_trials(kPre, post, m, config(Basis::P, NoiseConfig::x0(10.0), 100000, 9));
    const auto wide = run_trials(kPre, post, m, config(Basis::P, NoiseConfig::x0(50.0), 100000, 9));
    CHECK(narrow.n_accepted == wide.n_accepted);
    CHECK(narrow.mean_hat == wide.mean_hat);
    CHECK(narrow.second_moment_hat == wide.second_moment_hat);

    // and a jitter-free run agrees within statistics
    const auto clean = run_trials(kPre, post, m, config(Basis::P, NoiseConfig::none(), 100000, 9));
    CHECK(within(clean.mean_hat, wide.mean_hat,
                 std::hypot(clean.mean_se, wide.mean_se), 5.0));
}

TEST_CASE("validation harness") {
    const auto post = state_from_angles(1.3 * pi, 0.0);
    const MeterConfig m(2.0 * std::sqrt(0.05), 1.0);

    SUBCASE("honest references pass") {
        const auto v = validate_against_analytics(
            kPre, post, m, config(Basis::X, NoiseConfig::none(), 300000, 31), 1);
        CHECK(v.pass);
        for (const auto& c : v.checks) CHECK(std::abs(c.z) <= 4.0);
    }

    SUBCASE("corrupted references fail") {
        const auto v = validate_against_analytics(
            kPre, post, m, config(Basis::X, NoiseConfig::none(), 300000, 31), 1, true);
        CHECK_FALSE(v.pass);
    }

    SUBCASE("position jitter leaves the mean reference unchanged") {
        double ref = 0.0;
        for (double j : {0.0, 1.0, 3.0}) {
            const auto v = validate_against_analytics(
                kPre, post, m, config(Basis::X, NoiseConfig::x0(j), 200000, 37), 1);
            CHECK(v.pass);
            if (j == 0.0)
                ref = v.checks[1].analytic;
            else
                CHECK(v.checks[1].analytic == ref);
        }
    }

    SUBCASE("acceptance rate tracks the quadrature gamma under momentum jitter") {
        const auto fig_post = state_from_angles(1.49 * pi, pi / 4.0);
        const MeterConfig mp(1.0, 10.0);
        const auto v = validate_against_analytics(
            kPre, fig_post, mp, config(Basis::P, NoiseConfig::p0(0.25), 200000, 41), 2);
        CHECK(v.pass);
        CHECK(v.checks[0].quantity == "gamma");
        CHECK(std::abs(v.checks[0].z) <= 4.0);
    }
}

TEST_CASE("default validation suite is well formed") {
    const auto cases = default_validation_suite();
    CHECK(cases.size() == 8);
    int x_cases = 0, p_cases = 0, none_cases = 0, x0_cases = 0, p0_cases = 0;
    for (const auto& c : cases) {
        (c.basis == Basis::X ? x_cases : p_cases)++;
        if (c.noise.kind == NoiseKind::None) none_cases++;
        if (c.noise.kind == NoiseKind::X0Jitter) x0_cases++;
        if (c.noise.kind == NoiseKind::P0Jitter) p0_cases++;
        CHECK(c.trials == 1000000);
    }
    CHECK(x_cases == 4);
    CHECK(p_cases == 4);
    CHECK(none_cases == 3);
    CHECK(x0_cases == 3);
    CHECK(p0_cases == 2);
}

TEST_CASE("degenerate acceptance is flagged") {
    // postselect onto a state orthogonal to the (undisturbed) eigenstate:
    // the acceptance probability is exactly zero every trial
    const PureState one(Complex(1, 0), Complex(0, 0));
    const PureState two(Complex(0, 0), Complex(1, 0));
    const MeterConfig m(1.0, 1.0);
    const auto est = run_trials(one, two, m, config(Basis::X, NoiseConfig::none(), 1000, 3));
    CHECK(est.degenerate);
    CHECK(est.n_accepted == 0);
    CHECK(est.gamma_hat == 0.0);
    CHECK(std::isnan(est.mean_hat));
}
