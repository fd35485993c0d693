#include "wva/noise.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "wva/quadrature.hpp"

namespace wva {

namespace {

NoiseConfig checked(NoiseKind kind, double width) {
    if (!(std::isfinite(width) && width >= 0.0))
        throw std::invalid_argument("NoiseConfig: width must be >= 0");
    return {kind, width};
}

// Momentum-readout variance including jitter; the paper's effective width
// enters as 1/sigma_J^2 = 1/4sigma^2 + J_p^2 (dimensionless units, verbatim).
double momentum_variance(const MeterConfig& m, double jp) {
    return 1.0 / (4.0 * m.sigma() * m.sigma()) + jp * jp;
}

ImaginaryWvaReport p_moments(const PureState& pre, const PureState& post,
                             const MeterConfig& m, double jp, double gamma) {
    const Complex aw = weak_value(pre, post);
    const double d = m.d();
    const double v = momentum_variance(m, jp);
    const double decay = std::exp(-2.0 * d * d * v);

    ImaginaryWvaReport r{};
    r.sigma_j_eff = 1.0 / std::sqrt(v);
    r.k_factor = (1.0 - decay) / 2.0;
    r.m_k = modification_factor(aw, decay);
    r.mean_p = (aw.imag() / r.m_k) * 2.0 * d * v * decay;
    r.second_moment_p =
        v + ((std::norm(aw) - 1.0) / r.m_k) * 2.0 * d * d * v * v * decay;
    r.var_p = r.second_moment_p - r.mean_p * r.mean_p;
    r.gamma = gamma;
    r.snr = imaginary_wva_snr(r);
    return r;
}

double normal_pdf(double x, double width) {
    return std::exp(-x * x / (2.0 * width * width)) /
           (std::sqrt(2.0 * std::numbers::pi) * width);
}

} // namespace

NoiseConfig NoiseConfig::x0(double j) { return checked(NoiseKind::X0Jitter, j); }
NoiseConfig NoiseConfig::p0(double jp) { return checked(NoiseKind::P0Jitter, jp); }

XBasisMoments x_basis_x0_moments(const PureState& pre, const PureState& post,
                                 const MeterConfig& m, double j) {
    if (!(std::isfinite(j) && j >= 0.0))
        throw std::invalid_argument("x_basis_x0_moments: noise width must be >= 0");
    const double mean = amplified_mean_x(pre, post, m);
    const double var = postselected_variance_x(pre, post, m);
    return {mean, var + mean * mean + j * j};
}

double postselect_weight_p(const PureState& pre, const PureState& post,
                           const MeterConfig& m, double p) {
    // |<f| psi_tilde(p)>|^2 up to the branch-independent |Phi(p)|^2 factor;
    // the squared-amplitude form cannot go negative near its zeros.
    const Complex half_phase = std::polar(1.0, -m.d() * p);
    const Complex amp = std::conj(post.a1()) * pre.a1() * half_phase +
                        std::conj(post.a2()) * pre.a2() * std::conj(half_phase);
    return std::norm(amp);
}

double postselection_probability_p(const PureState& pre, const PureState& post,
                                   const MeterConfig& m, double jp) {
    if (jp == 0.0)
        return postselection_probability_x(pre, post, m);

    const double readout_sd = 1.0 / (2.0 * m.sigma());
    const auto clip = readout_domain_p(m, jp);
    const QuadratureOptions inner_opt{1e-11, 1e-9};
    const auto conditional = [&](double p0) {
        // The readout density is a Gaussian of width readout_sd at p0; only
        // its +-12 sd neighbourhood carries mass, so the inner domain is
        // already tight around the integrand.
        const double lo = std::max(clip.lo, p0 - 12.0 * readout_sd);
        const double hi = std::min(clip.hi, p0 + 12.0 * readout_sd);
        return integrate(
            [&](double p) {
                return prior_density_p(p, m, p0) * postselect_weight_p(pre, post, m, p);
            },
            lo, hi, inner_opt);
    };
    return integrate(
        [&](double p0) { return normal_pdf(p0, jp) * conditional(p0); },
        -10.0 * jp, 10.0 * jp, QuadratureOptions{1e-10, 1e-8});
}

ImaginaryWvaReport p_basis_x0_moments(const PureState& pre, const PureState& post,
                                      const MeterConfig& m) {
    return p_moments(pre, post, m, 0.0,
                     postselection_probability_x(pre, post, m));
}

ImaginaryWvaReport p_basis_p0_moments(const PureState& pre, const PureState& post,
                                      const MeterConfig& m, double jp) {
    if (!(std::isfinite(jp) && jp >= 0.0))
        throw std::invalid_argument("p_basis_p0_moments: noise width must be >= 0");
    return p_moments(pre, post, m, jp,
                     postselection_probability_p(pre, post, m, jp));
}

double imaginary_wva_snr(const ImaginaryWvaReport& report) {
    if (!(report.var_p > 0.0))
        throw DegenerateVariance("imaginary_wva_snr: nonpositive variance");
    return std::sqrt(report.gamma) * report.mean_p / std::sqrt(report.var_p);
}

double standard_snr(const MeterConfig& m, double j) {
    if (!(std::isfinite(j) && j >= 0.0))
        throw std::invalid_argument("standard_snr: noise width must be >= 0");
    return m.d() / std::sqrt(m.sigma() * m.sigma() + j * j);
}

OptimalJp find_optimal_jp(const PureState& pre, const PureState& post,
                          const MeterConfig& m, double jp_lo, double jp_hi) {
    if (!(std::isfinite(jp_lo) && std::isfinite(jp_hi)) || jp_lo < 0.0 ||
        !(jp_lo < jp_hi))
        throw std::invalid_argument("find_optimal_jp: need 0 <= jp_lo < jp_hi");

    const auto objective = [&](double jp) {
        return std::abs(p_basis_p0_moments(pre, post, m, jp).snr);
    };

    constexpr int kGridPoints = 33;
    std::vector<double> jp(kGridPoints), val(kGridPoints);
    for (int k = 0; k < kGridPoints; ++k) {
        jp[k] = jp_lo + (jp_hi - jp_lo) * k / (kGridPoints - 1);
        val[k] = objective(jp[k]);
    }

    int best = 0;
    int interior_maxima = 0;
    for (int k = 0; k < kGridPoints; ++k) {
        if (val[k] > val[best]) best = k;
        if (k > 0 && k + 1 < kGridPoints && val[k] > val[k - 1] && val[k] > val[k + 1])
            ++interior_maxima;
    }

    const bool bracketed =
        best > 0 && best + 1 < kGridPoints && interior_maxima == 1 &&
        val[best] > val[best - 1] && val[best] > val[best + 1];
    if (!bracketed)
        return {jp[best], val[best], false};

    // Golden-section search inside the bracket.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = jp[best - 1], b = jp[best + 1];
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-6 * std::max(b, 1e-12)) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        }
    }
    const double star = 0.5 * (a + b);
    return {star, objective(star), true};
}

} // namespace wva
