#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "wva/analytics.hpp"
#include "wva/rng.hpp"

using namespace wva;
using std::numbers::pi;

namespace {

const PureState kPre(Complex(1, 0), Complex(1, 0));

MeterConfig meter_of_strength(double g, double sigma = 1.0) {
    return MeterConfig(2.0 * sigma * std::sqrt(g), sigma);
}

} // namespace

TEST_CASE("postselection probability: limits and quadrature agreement") {
    const auto post = state_from_angles(1.3 * pi, 0.0);

    SUBCASE("vanishing strength recovers the overlap probability") {
        const auto m = meter_of_strength(1e-12);
        CHECK(postselection_probability_x(kPre, post, m) ==
              doctest::Approx(overlap_probability(kPre, post)).epsilon(1e-9));
    }

    SUBCASE("strong-measurement limit decoheres the cross term") {
        const MeterConfig m(40.0, 1.0);  // g = 400
        const auto rho_i = DensityMatrix::from_pure(kPre);
        const auto rho_f = DensityMatrix::from_pure(post);
        CHECK(postselection_probability_x(kPre, post, m) ==
              doctest::Approx(rho_f.r11() * rho_i.r11() + rho_f.r22() * rho_i.r22())
                  .epsilon(1e-12));
    }

    SUBCASE("matches the integral of the unnormalized joint density") {
        const auto f149 = state_from_angles(1.49 * pi, 0.0);
        const auto m = meter_of_strength(0.1);
        const auto mom = oracle::x_basis_moments(kPre, f149, m);
        CHECK(postselection_probability_x(kPre, f149, m) ==
              doctest::Approx(mom.norm).epsilon(1e-9));
    }
}

TEST_CASE("amplified mean: AAV limit, fixed point, quadrature agreement") {
    SUBCASE("vanishing strength gives d ReA_w") {
        const auto post = state_from_angles(1.3 * pi, 0.0);
        const auto m = meter_of_strength(1e-9);
        const double re_aw = weak_value(kPre, post).real();
        CHECK(amplified_mean_x(kPre, post, m) ==
              doctest::Approx(m.d() * re_aw).epsilon(1e-7));
    }

    SUBCASE("|A_w| = 1 pins M = 1 at any strength") {
        // phi = pi/2 with theta = pi/2 gives A_w = -i (unit modulus)
        const auto post = state_from_angles(0.5 * pi, 0.5 * pi);
        const auto aw = weak_value(kPre, post);
        REQUIRE(std::abs(std::abs(aw) - 1.0) < 1e-12);
        for (double g : {1e-3, 0.1, 0.7}) {
            const auto m = meter_of_strength(g);
            CHECK(amplified_mean_x(kPre, post, m) ==
                  doctest::Approx(m.d() * aw.real()).epsilon(1e-13));
        }
        // and with A_w = -1 the mean sits at -d for every strength
        const PureState two(Complex(0, 0), Complex(1, 0));
        for (double g : {1e-3, 0.1, 0.7}) {
            const auto m = meter_of_strength(g);
            CHECK(amplified_mean_x(kPre, two, m) ==
                  doctest::Approx(-m.d()).epsilon(1e-13));
        }
    }

    SUBCASE("quadrature agreement in the anomalous regime") {
        const auto post = state_from_angles(1.49 * pi, 0.0);
        const auto m = meter_of_strength(0.1);
        const auto mom = oracle::x_basis_moments(kPre, post, m);
        CHECK(amplified_mean_x(kPre, post, m) ==
              doctest::Approx(mom.mean).epsilon(1e-9));
    }

    SUBCASE("orthogonal selection propagates") {
        CHECK_THROWS_AS(
            amplified_mean_x(kPre, state_from_angles(1.5 * pi, 0.0), meter_of_strength(0.1)),
            OrthogonalSelection);
    }
}

TEST_CASE("postselected variance: eigenstate branch, AAV width, quadrature") {
    SUBCASE("eigenstate postselection keeps the bare Gaussian width") {
        const PureState one(Complex(1, 0), Complex(0, 0));
        for (double g : {0.01, 0.3}) {
            const auto m = meter_of_strength(g, 1.7);
            CHECK(postselected_variance_x(one, one, m) ==
                  doctest::Approx(m.sigma() * m.sigma()).epsilon(1e-13));
        }
    }

    SUBCASE("AAV limit approaches sigma^2") {
        const auto post = state_from_angles(1.3 * pi, 0.0);
        const auto m = meter_of_strength(1e-8);
        CHECK(postselected_variance_x(kPre, post, m) ==
              doctest::Approx(m.sigma() * m.sigma()).epsilon(1e-5));
    }

    SUBCASE("quadrature agreement at finite strength") {
        const auto post = state_from_angles(1.49 * pi, 0.0);
        const auto m = meter_of_strength(0.1);
        const auto mom = oracle::x_basis_moments(kPre, post, m);
        CHECK(postselected_variance_x(kPre, post, m) ==
              doctest::Approx(mom.variance()).epsilon(1e-8));
    }

    SUBCASE("purely imaginary weak value falls back to quadrature") {
        // theta = 1.5 pi with phi = pi/2 gives A_w = -i exactly: ReA_w = 0
        const auto post = state_from_angles(1.5 * pi, 0.5 * pi);
        const auto aw = weak_value(kPre, post);
        REQUIRE(std::abs(aw.real()) < 1e-12);
        const auto m = meter_of_strength(0.2);
        const auto mom = oracle::x_basis_moments(kPre, post, m);
        CHECK(postselected_variance_x(kPre, post, m) ==
              doctest::Approx(mom.variance()).epsilon(1e-8));
    }
}

TEST_CASE("joint density: normalization and moment identities") {
    const auto post = state_from_angles(1.3 * pi, 0.0);
    const auto m = meter_of_strength(0.05);
    const auto dom = readout_domain_x(m);

    const double mass = integrate(
        [&](double x) { return joint_density_x(kPre, post, m, x); }, dom.lo, dom.hi);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

    SUBCASE("trivial postselection approaches the prior") {
        const auto m_weak = meter_of_strength(1e-10);
        const auto rho = DensityMatrix::from_pure(kPre);
        for (double x : {-0.5, 0.0, 1.2})
            CHECK(joint_density_x(kPre, kPre, m_weak, x) ==
                  doctest::Approx(prior_density_x(rho, x, m_weak)).epsilon(1e-8));
    }

    SUBCASE("closed-form moments match the density") {
        const double mean = integrate(
            [&](double x) { return x * joint_density_x(kPre, post, m, x); }, dom.lo,
            dom.hi);
        CHECK(mean == doctest::Approx(amplified_mean_x(kPre, post, m)).epsilon(1e-9));
    }
}

TEST_CASE("snr report: bundle consistency and paper limits") {
    SUBCASE("lambda approaches unity at vanishing strength") {
        const auto post = state_from_angles(1.3 * pi, 0.0);
        const auto rep = snr_report(kPre, post, meter_of_strength(1e-6));
        CHECK(std::abs(rep.lambda - 1.0) <= 1e-3);
    }

    SUBCASE("R stays below one in the anomalous regime and matches quadrature") {
        const auto post = state_from_angles(1.49 * pi, 0.0);
        const auto m = meter_of_strength(0.1);
        const auto rep = snr_report(kPre, post, m);
        CHECK(rep.r_factor < 1.0);
        const auto mom = oracle::x_basis_moments(kPre, post, m);
        const double r_quad = std::sqrt(mom.norm) * (std::abs(mom.mean) / m.d()) /
                              std::sqrt(mom.variance() / (m.sigma() * m.sigma()));
        CHECK(rep.r_factor == doctest::Approx(r_quad).epsilon(1e-8));
    }

    SUBCASE("lambda_tilde exceeds one somewhere on a strength scan") {
        const auto post = state_from_angles(1.3 * pi, 0.0);
        double best = 0.0;
        for (double g = 1e-4; g <= 1.0; g *= 1.3)
            best = std::max(best, snr_report(kPre, post, meter_of_strength(g)).lambda_tilde);
        CHECK(best > 1.0);
    }

    SUBCASE("report invariants") {
        RandomStream rng(31);
        for (int k = 0; k < 50; ++k) {
            const double theta = 1.05 * pi + 0.9 * pi * rng.uniform();
            if (std::abs(theta - 1.5 * pi) < 0.02 * pi) continue;
            const double phi = 2.0 * pi * rng.uniform();
            const double g = std::exp(std::log(1e-4) + rng.uniform() * std::log(1e4));
            const auto rep = snr_report(kPre, state_from_angles(theta, phi),
                                        meter_of_strength(g));
            CHECK(rep.var_x > 0.0);
            CHECK(rep.r_factor * rep.r_factor ==
                  doctest::Approx(rep.gamma * rep.eta * rep.eta /
                                  (rep.eta_sigma * rep.eta_sigma))
                      .epsilon(1e-10));
            CHECK(rep.lambda_tilde ==
                  doctest::Approx(rep.lambda / (rep.eta_sigma * rep.eta_sigma))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("AAV convergence and fall-off of the amplification rate") {
    SUBCASE("eta converges to |ReA_w| when g |A_w|^2 stays small") {
        for (double theta : {1.2 * pi, 1.3 * pi, 1.7 * pi, 1.8 * pi}) {
            const auto post = state_from_angles(theta, 0.0);
            const double re_aw = std::abs(weak_value(kPre, post).real());
            REQUIRE(1e-6 * std::norm(weak_value(kPre, post)) <= 1e-4);
            const auto rep = snr_report(kPre, post, meter_of_strength(1e-6));
            CHECK(std::abs(rep.eta - re_aw) <= 1e-3 * re_aw);
        }
    }

    SUBCASE("eta falls toward zero as the weak value diverges at fixed g") {
        const auto m = meter_of_strength(0.05);
        const double eta_49 =
            snr_report(kPre, state_from_angles(1.49 * pi, 0.0), m).eta;
        const double eta_4999 =
            snr_report(kPre, state_from_angles(1.4999 * pi, 0.0), m).eta;
        CHECK(eta_4999 < eta_49);
    }
}

TEST_CASE("gamma grows with strength for the reference postselection family") {
    for (double theta : {1.1 * pi, 1.3 * pi, 1.49 * pi, 1.6 * pi, 1.9 * pi}) {
        const auto post = state_from_angles(theta, 0.0);
        double prev = 0.0;
        for (double g = 1e-4; g <= 1.0; g *= 2.0) {
            const double gamma =
                postselection_probability_x(kPre, post, meter_of_strength(g));
            CHECK(gamma >= prev - 1e-12);
            prev = gamma;
        }
    }
}

TEST_CASE("closed form vs quadrature across random parameter points") {
    RandomStream rng(32);
    int tested = 0;
    while (tested < 50) {
        const double theta = 1.05 * pi + 0.9 * pi * rng.uniform();
        if (std::abs(theta - 1.5 * pi) < 0.05 * pi) continue;  // mean crosses zero there
        const double phi = 2.0 * pi * rng.uniform();
        const double g = std::exp(std::log(1e-4) + rng.uniform() * std::log(1e4));
        const auto post = state_from_angles(theta, phi);
        const auto m = meter_of_strength(g);

        const auto mom = oracle::x_basis_moments(kPre, post, m);
        CHECK(postselection_probability_x(kPre, post, m) ==
              doctest::Approx(mom.norm).epsilon(1e-7));
        CHECK(amplified_mean_x(kPre, post, m) ==
              doctest::Approx(mom.mean).epsilon(1e-7));
        CHECK(postselected_variance_x(kPre, post, m) ==
              doctest::Approx(mom.variance()).epsilon(1e-7));
        ++tested;
    }
}
