#include "wva/fisher.hpp"

#include <cmath>

#include "wva/quadrature.hpp"

namespace wva {

namespace {

double fd_step(double omega0) {
    return 1e-4 * (omega0 != 0.0 ? std::abs(omega0) : 1.0);
}

// Central difference with one Richardson extrapolation level.
template <class F>
double derivative(F&& f, double x0, double h) {
    const double d1 = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    const double d2 = (f(x0 + 0.5 * h) - f(x0 - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

double fisher_information(const ParamDensity& density, double omega0) {
    const double h = density.step > 0.0 ? density.step : fd_step(omega0);
    const auto integrand = [&](double x) {
        const double p = density.pdf(x, omega0);
        if (!(p > 0.0))
            throw NonPositiveDensity("fisher_information: density not positive in domain");
        const double dp =
            derivative([&](double w) { return density.pdf(x, w); }, omega0, h);
        return dp * dp / p;
    };
    return integrate(integrand, density.x_lo, density.x_hi,
                     QuadratureOptions{1e-12, 1e-10});
}

double postselected_fisher(const PureState& pre, const PureState& post,
                           const MeterConfig& m) {
    const auto dom = readout_domain_x(m);
    // The density's d-dependence moves on the sigma scale (wavepacket shift),
    // so the score step is tied to max(d, sigma); 1e-4 d alone drowns the
    // difference quotient in roundoff once d << sigma.
    ParamDensity joint{
        [&](double x, double dd) {
            return joint_density_x(pre, post, MeterConfig(dd, m.sigma()), x);
        },
        dom.lo, dom.hi, 1e-4 * std::max(m.d(), m.sigma())};
    return fisher_information(joint, m.d());
}

double amplified_mean_derivative(const PureState& pre, const PureState& post,
                                 const MeterConfig& m) {
    return derivative(
        [&](double dd) {
            return amplified_mean_x(pre, post, MeterConfig(dd, m.sigma()));
        },
        m.d(), fd_step(m.d()));
}

CrbReport crb_report(const PureState& pre, const PureState& post,
                     const MeterConfig& m) {
    CrbReport r{};
    const double sigma2 = m.sigma() * m.sigma();
    r.fisher_standard = 1.0 / sigma2;
    r.fisher_post = postselected_fisher(pre, post, m);
    r.eta_tilde = amplified_mean_derivative(pre, post, m);
    const double eta_sigma_sq = postselected_variance_x(pre, post, m) / sigma2;
    r.lhs = r.eta_tilde * r.eta_tilde / eta_sigma_sq;
    r.rhs = r.fisher_post / r.fisher_standard;
    r.tradeoff = postselection_probability_x(pre, post, m) * r.rhs;
    r.slack = r.rhs - r.lhs;
    return r;
}

} // namespace wva
