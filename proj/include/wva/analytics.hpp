#pragma once

#include "wva/meter.hpp"
#include "wva/quantum.hpp"

namespace wva {

/// Closed-form bundle for one pre/post-selection pair and meter setting
/// (position-basis measurement).
struct WvaReport {
    double gamma;        ///< postselection probability
    double eta;          ///< amplification rate |mean_x| / d
    double eta_sigma;    ///< width change factor sigma_tilde / sigma
    double lambda;       ///< gamma eta^2 / |A_fi|^2
    double lambda_tilde; ///< lambda / eta_sigma^2
    double r_factor;     ///< sqrt(gamma) eta / eta_sigma, SNR vs standard
    double mean_x;       ///< signed postselected mean readout
    double var_x;        ///< postselected readout variance sigma_tilde^2
    double m_factor;     ///< modification factor M = 1 + G (|A_w|^2 - 1)
    double gamma_aav;    ///< vanishing-strength reference |<f|i>|^2
    double aav_snr_factor; ///< vanishing-strength sqrt(gamma) eta = |A_fi|
};

/// M = 1 + (1 - overlap)/2 * (|A_w|^2 - 1), where overlap is the scalar
/// product of the two displaced meter states (e^{-2g} in the position
/// basis).
double modification_factor(Complex weak_val, double branch_overlap);

/// Total postselection probability of the finite-strength position
/// measurement.
double postselection_probability_x(const PureState& pre, const PureState& post,
                                   const MeterConfig& m);

/// Signed postselected mean readout, d ReA_w / M. Throws
/// OrthogonalSelection through weak_value.
double amplified_mean_x(const PureState& pre, const PureState& post,
                        const MeterConfig& m);

/// Postselected readout variance sigma_tilde^2. For a purely imaginary weak
/// value (|ReA_w| < 1e-12) the rational closed form is ill-posed and the
/// variance is evaluated by quadrature of the joint density instead.
double postselected_variance_x(const PureState& pre, const PureState& post,
                               const MeterConfig& m);

/// Normalized joint density of reading x and passing postselection,
/// Pr(f; x) = P_i(x) P_x(f) / gamma.
double joint_density_x(const PureState& pre, const PureState& post,
                       const MeterConfig& m, double x);

/// P_i(x) P_x(f), the joint density before normalization by gamma.
double joint_density_x_unnormalized(const PureState& pre, const PureState& post,
                                    const MeterConfig& m, double x);

/// Full consistent bundle; propagates component errors.
WvaReport snr_report(const PureState& pre, const PureState& post,
                     const MeterConfig& m);

} // namespace wva
