#include "wva/analytics.hpp"

#include <cmath>

#include "wva/quadrature.hpp"

namespace wva {

namespace {

constexpr double kRealPartEpsilon = 1e-12;

double variance_by_quadrature(const PureState& pre, const PureState& post,
                              const MeterConfig& m) {
    const auto dom = readout_domain_x(m);
    const QuadratureOptions opt{1e-13, 1e-11};
    const double mean = integrate(
        [&](double x) { return x * joint_density_x(pre, post, m, x); }, dom.lo,
        dom.hi, opt);
    const double second = integrate(
        [&](double x) { return x * x * joint_density_x(pre, post, m, x); },
        dom.lo, dom.hi, opt);
    return second - mean * mean;
}

} // namespace

double modification_factor(Complex weak_val, double branch_overlap) {
    const double big_g = (1.0 - branch_overlap) / 2.0;
    return 1.0 + big_g * (std::norm(weak_val) - 1.0);
}

double postselection_probability_x(const PureState& pre, const PureState& post,
                                   const MeterConfig& m) {
    const auto rho_i = DensityMatrix::from_pure(pre);
    const auto rho_f = DensityMatrix::from_pure(post);
    const double coherent =
        2.0 * (std::conj(rho_f.r12()) * rho_i.r12()).real() * m.branch_overlap();
    return rho_f.r11() * rho_i.r11() + rho_f.r22() * rho_i.r22() + coherent;
}

double amplified_mean_x(const PureState& pre, const PureState& post,
                        const MeterConfig& m) {
    const Complex aw = weak_value(pre, post);
    return m.d() * aw.real() / modification_factor(aw, m.branch_overlap());
}

double postselected_variance_x(const PureState& pre, const PureState& post,
                               const MeterConfig& m) {
    const Complex aw = weak_value(pre, post);
    if (std::abs(aw.real()) < kRealPartEpsilon)
        return variance_by_quadrature(pre, post, m);
    const double d = m.d();
    const double sigma2 = m.sigma() * m.sigma();
    const double eta_signed =
        aw.real() / modification_factor(aw, m.branch_overlap());
    return sigma2 +
           d * d * eta_signed *
               ((std::norm(aw) + 1.0) / (2.0 * aw.real()) - eta_signed);
}

double joint_density_x_unnormalized(const PureState& pre, const PureState& post,
                                    const MeterConfig& m, double x) {
    // |<f| psi_tilde(x)>|^2 with psi_tilde = (i1 Phi_1, i2 Phi_2): exact for
    // pure selections and nonnegative by construction, where the
    // density-matrix expansion cancels catastrophically near its interior
    // zero (the readout that anti-selects |f>).
    const Complex amp =
        std::conj(post.a1()) * pre.a1() * branch_amplitude_x(1, x, m) +
        std::conj(post.a2()) * pre.a2() * branch_amplitude_x(2, x, m);
    return std::norm(amp);
}

double joint_density_x(const PureState& pre, const PureState& post,
                       const MeterConfig& m, double x) {
    return joint_density_x_unnormalized(pre, post, m, x) /
           postselection_probability_x(pre, post, m);
}

WvaReport snr_report(const PureState& pre, const PureState& post,
                     const MeterConfig& m) {
    WvaReport r{};
    r.gamma = postselection_probability_x(pre, post, m);
    r.mean_x = amplified_mean_x(pre, post, m);
    r.var_x = postselected_variance_x(pre, post, m);
    r.m_factor =
        modification_factor(weak_value(pre, post), m.branch_overlap());
    r.eta = std::abs(r.mean_x) / m.d();
    r.eta_sigma = std::sqrt(r.var_x) / m.sigma();
    const double a_fi_sq = std::norm(transition_amplitude(pre, post));
    r.lambda = r.gamma * r.eta * r.eta / a_fi_sq;
    r.lambda_tilde = r.lambda / (r.eta_sigma * r.eta_sigma);
    r.r_factor = std::sqrt(r.gamma) * r.eta / r.eta_sigma;
    r.gamma_aav = overlap_probability(pre, post);
    r.aav_snr_factor = std::sqrt(a_fi_sq);
    return r;
}

} // namespace wva
