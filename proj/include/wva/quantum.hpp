#pragma once

#include <Eigen/Dense>
#include <complex>

#include "wva/errors.hpp"

namespace wva {

using Complex = std::complex<double>;
using Vector2c = Eigen::Vector2cd;
using Matrix2c = Eigen::Matrix2cd;

/// Pre/post-selection states are numerically orthogonal below this overlap;
/// weak values then exceed ~1e10 and lose all significance in double
/// precision, so the operations fail loudly instead of returning garbage.
inline constexpr double kOverlapEpsilon = 1e-10;

/// Normalized state of the two-level system in the {|1>, |2>} basis.
/// The global phase is kept as given; all derived quantities are
/// phase-invariant.
class PureState {
public:
    /// Normalizes the amplitudes; throws std::invalid_argument on a
    /// non-finite or zero vector.
    explicit PureState(const Vector2c& amplitudes);
    PureState(Complex a1, Complex a2) : PureState(Vector2c(a1, a2)) {}

    const Vector2c& vec() const { return v_; }
    Complex a1() const { return v_(0); }
    Complex a2() const { return v_(1); }

private:
    Vector2c v_;
};

/// Hermitian, unit-trace, positive 2x2 density matrix. Invariants are
/// checked at construction (tolerance 1e-12).
class DensityMatrix {
public:
    explicit DensityMatrix(const Matrix2c& m);
    static DensityMatrix from_pure(const PureState& psi);

    const Matrix2c& matrix() const { return m_; }
    double r11() const { return m_(0, 0).real(); }
    double r22() const { return m_(1, 1).real(); }
    Complex r12() const { return m_(0, 1); }

private:
    Matrix2c m_;
};

/// |f> = cos(theta/2) e^{i phi} |1> + sin(theta/2) |2>.
PureState state_from_angles(double theta, double phi);

/// The sigma_z observable in the computational basis.
const Matrix2c& sigma_z();

/// <f|i>.
Complex overlap(const PureState& pre, const PureState& post);

/// Postselection probability in the vanishing-strength limit, |<f|i>|^2.
double overlap_probability(const PureState& pre, const PureState& post);

/// <f|sigma_z|i>, the transition amplitude of the measured observable.
Complex transition_amplitude(const PureState& pre, const PureState& post);

/// Weak value <f|sigma_z|i> / <f|i>. Throws OrthogonalSelection when
/// |<f|i>| <= kOverlapEpsilon; callers must surface that, never substitute
/// a number.
Complex weak_value(const PureState& pre, const PureState& post);

} // namespace wva
