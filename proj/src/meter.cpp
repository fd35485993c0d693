#include "wva/meter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wva {

namespace {

double branch_center(int branch, const MeterConfig& m) {
    if (branch != 1 && branch != 2)
        throw std::invalid_argument("meter: branch must be 1 or 2");
    return branch == 1 ? m.d() : -m.d();
}

} // namespace

MeterConfig::MeterConfig(double displacement, double width)
    : d_(displacement), sigma_(width) {
    if (!(std::isfinite(d_) && d_ > 0.0))
        throw std::invalid_argument("MeterConfig: displacement must be > 0");
    if (!(std::isfinite(sigma_) && sigma_ > 0.0))
        throw std::invalid_argument("MeterConfig: width must be > 0");
}

double MeterConfig::strength() const {
    const double r = d_ / (2.0 * sigma_);
    return r * r;
}

double MeterConfig::strength_factor() const {
    return (1.0 - branch_overlap()) / 2.0;
}

double MeterConfig::branch_overlap() const {
    return std::exp(-2.0 * strength());
}

Interval readout_domain_x(const MeterConfig& m) {
    const double lim = m.d() + 12.0 * m.sigma();
    return {-lim, lim};
}

Interval readout_domain_p(const MeterConfig& m, double jp) {
    const double var = 1.0 / (4.0 * m.sigma() * m.sigma()) + jp * jp;
    const double lim = 12.0 * std::sqrt(var);
    return {-lim, lim};
}

double branch_amplitude_x(int branch, double x, const MeterConfig& m) {
    const double s2 = m.sigma() * m.sigma();
    const double dx = x - branch_center(branch, m);
    return std::pow(2.0 * std::numbers::pi * s2, -0.25) * std::exp(-dx * dx / (4.0 * s2));
}

Complex branch_amplitude_p(int branch, double p, const MeterConfig& m) {
    const double s2 = m.sigma() * m.sigma();
    const double mag =
        std::pow(2.0 * s2 / std::numbers::pi, 0.25) * std::exp(-s2 * p * p);
    const double phase = -branch_center(branch, m) * p;
    return mag * std::polar(1.0, phase);
}

double prior_density_x(const DensityMatrix& rho, double x, const MeterConfig& m) {
    const double a1 = branch_amplitude_x(1, x, m);
    const double a2 = branch_amplitude_x(2, x, m);
    return rho.r11() * a1 * a1 + rho.r22() * a2 * a2;
}

double prior_density_p(double p, const MeterConfig& m, double p0) {
    const double var = 1.0 / (4.0 * m.sigma() * m.sigma());
    const double dp = p - p0;
    return std::exp(-dp * dp / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

DensityMatrix bayes_update_x(const DensityMatrix& rho, double x, const MeterConfig& m) {
    if (!std::isfinite(x))
        throw ZeroLikelihood("bayes_update_x: non-finite readout");

    const double s2 = m.sigma() * m.sigma();
    // log |Phi_j(x)|^2 up to the common normalization constant
    const double l1 = -(x - m.d()) * (x - m.d()) / (2.0 * s2);
    const double l2 = -(x + m.d()) * (x + m.d()) / (2.0 * s2);
    const double lw1 = rho.r11() > 0.0 ? std::log(rho.r11()) + l1
                                       : -std::numeric_limits<double>::infinity();
    const double lw2 = rho.r22() > 0.0 ? std::log(rho.r22()) + l2
                                       : -std::numeric_limits<double>::infinity();
    const double shift = std::max(lw1, lw2);
    if (!std::isfinite(shift))
        throw ZeroLikelihood("bayes_update_x: zero prior likelihood");

    const double w1 = std::exp(lw1 - shift);
    const double w2 = std::exp(lw2 - shift);
    const double norm = w1 + w2;
    // Coherence weight Phi_1 Phi_2 / N in the same shifted scale; underflows
    // gracefully to full collapse far outside the wavepacket.
    const Complex c12 = rho.r12() * (std::exp(0.5 * (l1 + l2) - shift) / norm);
    Matrix2c out;
    out << Complex(w1 / norm, 0), c12, std::conj(c12), Complex(w2 / norm, 0);
    return DensityMatrix(out);
}

DensityMatrix bayes_update_p(const DensityMatrix& rho, double p, const MeterConfig& m) {
    if (!std::isfinite(p))
        throw std::invalid_argument("bayes_update_p: non-finite readout");
    const Complex c12 = rho.r12() * std::polar(1.0, -2.0 * m.d() * p);
    Matrix2c out;
    out << Complex(rho.r11(), 0), c12, std::conj(c12), Complex(rho.r22(), 0);
    return DensityMatrix(out);
}

double postselect_probability(const DensityMatrix& rho, const PureState& f) {
    const double p = (f.vec().adjoint() * rho.matrix() * f.vec())(0, 0).real();
    return std::clamp(p, 0.0, 1.0);
}

} // namespace wva
