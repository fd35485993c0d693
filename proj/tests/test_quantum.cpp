#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wva/quantum.hpp"
#include "wva/rng.hpp"

using namespace wva;
using std::numbers::pi;

namespace {

PureState plus_state() { return PureState(Complex(1, 0), Complex(1, 0)); }

PureState random_state(RandomStream& rng) {
    const double theta = rng.uniform() * pi;
    const double phi = rng.uniform() * 2.0 * pi;
    return state_from_angles(theta, phi);
}

} // namespace

TEST_CASE("state_from_angles parameterization") {
    const auto pole = state_from_angles(0.0, 0.0);
    CHECK(pole.a1() == Complex(1, 0));
    CHECK(pole.a2() == Complex(0, 0));

    const auto anti = state_from_angles(pi, 0.0);
    CHECK(std::abs(anti.a1()) < 1e-15);
    CHECK(std::abs(anti.a2() - Complex(1, 0)) < 1e-15);

    // cos(0.745 pi) e^{i pi/4}, sin(0.745 pi), evaluated independently.
    const auto s = state_from_angles(1.49 * pi, pi / 4);
    CHECK(s.a1().real() == doctest::Approx(-0.49208465758491998).epsilon(1e-13));
    CHECK(s.a1().imag() == doctest::Approx(-0.49208465758491998).epsilon(1e-13));
    CHECK(s.a2().real() == doctest::Approx(0.71812629776318881).epsilon(1e-13));
    CHECK(s.a2().imag() == 0.0);

    CHECK_THROWS_AS(state_from_angles(std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("pure states normalize at construction") {
    const PureState s(Complex(3, 0), Complex(0, 4));
    CHECK(s.vec().norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(PureState(Complex(0, 0), Complex(0, 0)), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(PureState(Complex(inf, 0), Complex(1, 0)), std::invalid_argument);
}

TEST_CASE("weak value against the elementary oracle") {
    // (cos(theta/2) - sin(theta/2)) / (cos(theta/2) + sin(theta/2)) for the
    // (|1>+|2>)/sqrt(2) pre-state and a real postselection state.
    auto oracle = [](double theta) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        return (c - s) / (c + s);
    };

    SUBCASE("eigenstate gives the eigenvalue exactly") {
        const PureState one(Complex(1, 0), Complex(0, 0));
        CHECK(weak_value(one, one) == Complex(1, 0));
        const PureState two(Complex(0, 0), Complex(1, 0));
        CHECK(weak_value(two, two) == Complex(-1, 0));
    }

    SUBCASE("moderate anomalous value") {
        const auto aw = weak_value(plus_state(), state_from_angles(1.3 * pi, 0));
        CHECK(aw.real() == doctest::Approx(oracle(1.3 * pi)).epsilon(1e-13));
        CHECK(aw.real() == doctest::Approx(-3.0776835371752522).epsilon(1e-13));
        CHECK(aw.imag() == doctest::Approx(0.0));
    }

    SUBCASE("large anomalous value") {
        const auto aw = weak_value(plus_state(), state_from_angles(1.49 * pi, 0));
        CHECK(aw.real() == doctest::Approx(oracle(1.49 * pi)).epsilon(1e-12));
        CHECK(aw.real() == doctest::Approx(-63.656741162871583).epsilon(1e-12));
    }

    SUBCASE("orthogonal selection fails loudly") {
        const PureState one(Complex(1, 0), Complex(0, 0));
        const PureState two(Complex(0, 0), Complex(1, 0));
        CHECK_THROWS_AS(weak_value(one, two), OrthogonalSelection);
        CHECK_THROWS_AS(weak_value(plus_state(), state_from_angles(1.5 * pi, 0)),
                        OrthogonalSelection);
    }
}

TEST_CASE("overlap probability") {
    CHECK(overlap_probability(plus_state(), plus_state()) == doctest::Approx(1.0));
    const PureState one(Complex(1, 0), Complex(0, 0));
    const PureState two(Complex(0, 0), Complex(1, 0));
    CHECK(overlap_probability(one, two) == 0.0);
    // (1 + sin theta)/2 expanded symbolically
    CHECK(overlap_probability(plus_state(), state_from_angles(1.3 * pi, 0)) ==
          doctest::Approx(0.09549150281252633).epsilon(1e-13));
}

TEST_CASE("transition amplitude") {
    const PureState one(Complex(1, 0), Complex(0, 0));
    CHECK(transition_amplitude(one, one) == Complex(1, 0));
    const PureState minus(Complex(1, 0), Complex(-1, 0));
    CHECK(transition_amplitude(plus_state(), minus).real() == doctest::Approx(1.0));
    CHECK(transition_amplitude(plus_state(), state_from_angles(1.49 * pi, 0)).real() ==
          doctest::Approx(-0.99987663248166059).epsilon(1e-13));
}

TEST_CASE("weak value times overlap equals the transition amplitude") {
    RandomStream rng(11);
    for (int k = 0; k < 200; ++k) {
        const auto i = random_state(rng);
        const auto f = random_state(rng);
        Complex q;
        try {
            q = weak_value(i, f);
        } catch (const OrthogonalSelection&) {
            continue;
        }
        const Complex lhs = q * overlap(i, f);
        CHECK(std::abs(lhs - transition_amplitude(i, f)) < 1e-12);
    }
}

TEST_CASE("eigenstate weak values are the eigenvalues for any postselection") {
    RandomStream rng(12);
    const PureState one(Complex(1, 0), Complex(0, 0));
    const PureState two(Complex(0, 0), Complex(1, 0));
    for (int k = 0; k < 100; ++k) {
        const auto f = random_state(rng);
        if (std::abs(overlap(one, f)) > kOverlapEpsilon)
            CHECK(weak_value(one, f) == Complex(1, 0));
        if (std::abs(overlap(two, f)) > kOverlapEpsilon)
            CHECK(weak_value(two, f) == Complex(-1, 0));
    }
}

TEST_CASE("overlap probability is symmetric") {
    RandomStream rng(13);
    for (int k = 0; k < 100; ++k) {
        const auto a = random_state(rng);
        const auto b = random_state(rng);
        CHECK(overlap_probability(a, b) ==
              doctest::Approx(overlap_probability(b, a)).epsilon(1e-13));
    }
}

TEST_CASE("density matrices from pure states are pure and valid") {
    RandomStream rng(14);
    for (int k = 0; k < 100; ++k) {
        const auto psi = random_state(rng);
        const auto rho = DensityMatrix::from_pure(psi);
        CHECK(rho.r11() + rho.r22() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(rho.r11() * rho.r22() ==
              doctest::Approx(std::norm(rho.r12())).epsilon(1e-12));
    }
}

TEST_CASE("density matrix invariants are enforced") {
    Matrix2c bad;
    bad << Complex(0.7, 0), Complex(0.6, 0), Complex(0.6, 0), Complex(0.3, 0);
    CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);  // not positive
    bad << Complex(0.7, 0), Complex(0, 0), Complex(0, 0), Complex(0.7, 0);
    CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);  // trace != 1
    bad << Complex(0.5, 0), Complex(0.1, 0), Complex(0.2, 0), Complex(0.5, 0);
    CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);  // not Hermitian
}
