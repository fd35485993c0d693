#include "wva/quantum.hpp"

#include <cmath>

namespace wva {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

PureState::PureState(const Vector2c& amplitudes) : v_(amplitudes) {
    if (!finite(v_(0)) || !finite(v_(1)))
        throw std::invalid_argument("PureState: non-finite amplitude");
    const double n = v_.norm();
    if (!(n > 0.0))
        throw std::invalid_argument("PureState: zero state vector");
    v_ /= n;
}

DensityMatrix::DensityMatrix(const Matrix2c& m) : m_(m) {
    constexpr double tol = 1e-12;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!finite(m_(r, c)))
                throw std::invalid_argument("DensityMatrix: non-finite entry");
    if (std::abs(m_(0, 1) - std::conj(m_(1, 0))) > tol ||
        std::abs(m_(0, 0).imag()) > tol || std::abs(m_(1, 1).imag()) > tol)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    const double r11 = m_(0, 0).real();
    const double r22 = m_(1, 1).real();
    if (std::abs(r11 + r22 - 1.0) > tol)
        throw std::invalid_argument("DensityMatrix: trace != 1");
    if (r11 < -tol || r11 > 1.0 + tol || r22 < -tol || r22 > 1.0 + tol)
        throw std::invalid_argument("DensityMatrix: population out of [0,1]");
    if (std::norm(m_(0, 1)) > r11 * r22 + tol)
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.vec() * psi.vec().adjoint());
}

PureState state_from_angles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw std::invalid_argument("state_from_angles: non-finite angle");
    return PureState(std::cos(theta / 2) * std::polar(1.0, phi), std::sin(theta / 2));
}

const Matrix2c& sigma_z() {
    static const Matrix2c sz = (Matrix2c() << 1, 0, 0, -1).finished();
    return sz;
}

Complex overlap(const PureState& pre, const PureState& post) {
    return post.vec().dot(pre.vec());
}

double overlap_probability(const PureState& pre, const PureState& post) {
    return std::norm(overlap(pre, post));
}

Complex transition_amplitude(const PureState& pre, const PureState& post) {
    return post.vec().dot(sigma_z() * pre.vec());
}

Complex weak_value(const PureState& pre, const PureState& post) {
    const Complex q = overlap(pre, post);
    if (std::abs(q) <= kOverlapEpsilon)
        throw OrthogonalSelection("weak_value: pre/post selection states are orthogonal");
    // Explicit s conj(q) / |q|^2 so sigma_z eigenstates give exactly +-1;
    // Smith-style complex division leaves a spurious imaginary residue there.
    return transition_amplitude(pre, post) * std::conj(q) / std::norm(q);
}

} // namespace wva
