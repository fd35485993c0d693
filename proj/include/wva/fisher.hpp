#pragma once

#include <functional>

#include "wva/analytics.hpp"

namespace wva {

/// A family of readout densities indexed by one real parameter, together
/// with the (fixed, pre-clipped) integration domain. `step` is the central
/// finite-difference step for the score; 0 selects 1e-4 |omega0|. It must
/// stay large enough that P(omega +- step) differ well above roundoff, so
/// tie it to the scale on which the density actually moves.
struct ParamDensity {
    std::function<double(double x, double omega)> pdf;
    double x_lo;
    double x_hi;
    double step = 0.0;
};

/// Classical Fisher information of `density` at omega0, by adaptive
/// quadrature of P (d ln P / d omega)^2. The score is formed by central
/// finite differences with one Richardson level. Throws NonPositiveDensity
/// if the density underflows inside the domain.
double fisher_information(const ParamDensity& density, double omega0);

/// Fisher information about the displacement d carried by one postselected
/// readout, using the normalized joint density (its d-dependent
/// normalization is differentiated inside the log).
double postselected_fisher(const PureState& pre, const PureState& post,
                           const MeterConfig& m);

/// Derivative of the signed postselected mean with respect to d at fixed
/// sigma (the paper-level eta + d * d(eta)/dd combination).
double amplified_mean_derivative(const PureState& pre, const PureState& post,
                                 const MeterConfig& m);

/// Cramer-Rao comparison bundle for one parameter point. All rates are per
/// trial; `lhs` and `rhs` are in units of the standard Fisher information
/// F = 1/sigma^2.
struct CrbReport {
    double fisher_standard; ///< F = 1 / sigma^2
    double fisher_post;     ///< F~ of one postselected readout
    double eta_tilde;       ///< d(mean)/dd, signed
    double lhs;             ///< eta_tilde^2 / eta_sigma^2
    double rhs;             ///< F~ / F
    double tradeoff;        ///< gamma F~ / F
    double slack;           ///< rhs - lhs, >= 0 up to numerics when CRB holds
};

CrbReport crb_report(const PureState& pre, const PureState& post,
                     const MeterConfig& m);

} // namespace wva
