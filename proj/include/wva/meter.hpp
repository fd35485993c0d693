#pragma once

#include <complex>

#include "wva/quantum.hpp"

namespace wva {

/// Gaussian meter: a wavepacket of width sigma whose center is displaced to
/// +d or -d by the two system branches. Everything is in the paper's
/// dimensionless simulation units (hbar = 1).
class MeterConfig {
public:
    /// Throws std::invalid_argument unless d > 0 and sigma > 0.
    MeterConfig(double displacement, double width);

    double d() const { return d_; }
    double sigma() const { return sigma_; }

    /// Measurement strength g = (d / 2 sigma)^2.
    double strength() const;
    /// Branch distinguishability G = (1 - e^{-2g}) / 2, in (0, 1/2).
    double strength_factor() const;
    /// Overlap of the two displaced wavepackets, <Phi_1|Phi_2> = e^{-2g}.
    double branch_overlap() const;

private:
    double d_;
    double sigma_;
};

struct Interval {
    double lo;
    double hi;
};

/// Readout clipping: outside these windows the Gaussian mass is < 1e-30 and
/// likelihoods underflow, so quadrature and sampling stay inside them.
Interval readout_domain_x(const MeterConfig& m);
Interval readout_domain_p(const MeterConfig& m, double jp = 0.0);

/// Real Gaussian amplitude of meter branch j in the position basis,
/// centered at +d (j = 1) or -d (j = 2).
double branch_amplitude_x(int branch, double x, const MeterConfig& m);

/// Complex branch amplitude in the momentum basis; the branches differ only
/// by the phase e^{-+ i d p}, so |amplitude|^2 is branch-independent.
Complex branch_amplitude_p(int branch, double p, const MeterConfig& m);

/// Pre-postselection readout density P_i(x) = r11 |Phi_1|^2 + r22 |Phi_2|^2.
double prior_density_x(const DensityMatrix& rho, double x, const MeterConfig& m);

/// Momentum readout density: a single Gaussian of variance 1/4 sigma^2
/// centered at p0 (the optional jitter shift), independent of the system.
double prior_density_p(double p, const MeterConfig& m, double p0 = 0.0);

/// Conditions the system state on a position readout. Likelihood ratios are
/// formed in log space so the update stays finite for |x| far outside the
/// wavepacket. Throws ZeroLikelihood for a non-finite readout.
DensityMatrix bayes_update_x(const DensityMatrix& rho, double x, const MeterConfig& m);

/// Conditions on a momentum readout: populations are unchanged and the
/// coherence acquires the phase e^{-i 2 d p}.
DensityMatrix bayes_update_p(const DensityMatrix& rho, double p, const MeterConfig& m);

/// Probability that the state rho passes projection onto |f>.
double postselect_probability(const DensityMatrix& rho, const PureState& f);

} // namespace wva
