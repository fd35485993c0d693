#pragma once

#include "wva/analytics.hpp"

namespace wva {

enum class NoiseKind { None, X0Jitter, P0Jitter };

/// Technical-noise model: a Gaussian random shift of the meter wavepacket in
/// position (width J) or momentum (width J_p). width = 0 reduces every
/// formula to its noise-free counterpart.
struct NoiseConfig {
    NoiseKind kind = NoiseKind::None;
    double width = 0.0;

    static NoiseConfig none() { return {NoiseKind::None, 0.0}; }
    static NoiseConfig x0(double j);
    static NoiseConfig p0(double jp);
};

/// Postselected moments of the position readout under x0 jitter of width J.
struct XBasisMoments {
    double mean;          ///< unaffected by the jitter
    double second_moment; ///< noise-free second moment plus J^2
};

XBasisMoments x_basis_x0_moments(const PureState& pre, const PureState& post,
                                 const MeterConfig& m, double j);

/// Momentum-basis (imaginary-weak-value) postselected moments.
struct ImaginaryWvaReport {
    double mean_p;          ///< signed postselected mean momentum
    double second_moment_p;
    double var_p;
    double gamma;           ///< postselection probability
    double snr;             ///< signed per-trial SNR, sqrt(gamma) mean / sd
    double sigma_j_eff;     ///< effective width sigma_J (2 sigma at J_p = 0)
    double m_k;             ///< modification factor M_k
    double k_factor;        ///< K = (1 - e^{-2 d^2 / sigma_J^2}) / 2
};

/// Momentum-basis moments under position jitter of any width: the momentum
/// readout distribution and the conditioned state are both free of x0, so
/// the output is identical to the noise-free case.
ImaginaryWvaReport p_basis_x0_moments(const PureState& pre, const PureState& post,
                                      const MeterConfig& m);

/// Momentum-basis moments under momentum jitter of width jp. The moments are
/// closed-form; gamma is evaluated by nested adaptive quadrature over the
/// joint (p, p0) density.
ImaginaryWvaReport p_basis_p0_moments(const PureState& pre, const PureState& post,
                                      const MeterConfig& m, double jp);

/// Postselection probability of the momentum measurement under momentum
/// jitter, by nested quadrature (outer p0 over +-10 jp, inner p).
double postselection_probability_p(const PureState& pre, const PureState& post,
                                   const MeterConfig& m, double jp);

/// Postselection weight <f|rho_tilde(p)|f> of a momentum readout.
double postselect_weight_p(const PureState& pre, const PureState& post,
                           const MeterConfig& m, double p);

/// sqrt(gamma) mean_p / sqrt(var_p); throws DegenerateVariance if the
/// report's variance is nonpositive (an upstream bug, not a physical case).
double imaginary_wva_snr(const ImaginaryWvaReport& report);

/// Per-trial SNR of the standard (no postselection) scheme, d/sqrt(sigma^2 + J^2).
double standard_snr(const MeterConfig& m, double j);

struct OptimalJp {
    double jp_star;
    double snr_star;  ///< |snr| at jp_star
    bool unimodal;    ///< false: bracketing failed, values are the grid maximum
};

/// Derivative-free maximizer of |snr(jp)| over [jp_lo, jp_hi]. Unimodality
/// is verified by three-point bracketing on a coarse grid; when bracketing
/// fails the grid maximum is returned with unimodal = false. Golden-section
/// refinement to 1e-6 relative on jp.
OptimalJp find_optimal_jp(const PureState& pre, const PureState& post,
                          const MeterConfig& m, double jp_lo, double jp_hi);

} // namespace wva
