#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "wva/config.hpp"

namespace wva {

enum class ScanQuantity {
    Gamma,
    Lambda,
    LambdaTilde,
    EtaSigma,
    RFactor,
    FisherRatio,
    Tradeoff,
    CrbSlack,
    SnrPBasis,
};

ScanQuantity scan_quantity_from_name(const std::string& name, int line);
std::string scan_quantity_name(ScanQuantity q);

/// Grid description for one or two axes over the scan variables
/// {g, theta, phi, d, sigma, J, Jp}. theta/phi are radians ("pi" suffix
/// accepted in configs); scanning g derives d = 2 sigma sqrt(g).
struct ScanSpec {
    struct Axis {
        std::string var;
        double lo = 0;
        double hi = 0;
        int points = 0;
        bool log = false;
    };

    ScanQuantity quantity = ScanQuantity::Gamma;
    std::vector<Axis> axes;               // one or two
    std::map<std::string, double> fixed;  // defaults applied in parse

    /// Builds a validated spec from [scan]/[axis]/[fixed] sections plus
    /// "section.key=value" override strings (second axis addressed as
    /// axis2.*). Throws SpecParseError on any problem.
    static ScanSpec parse(const Config& cfg, const std::vector<std::string>& overrides = {});
};

/// Evaluates the grid row-major (first axis outermost) and writes CSV with
/// one row per point. Errors at individual points land in the status column
/// instead of aborting. Returns a short human-readable note ("" if none).
std::string run_scan(const ScanSpec& spec, std::ostream& out);

/// Writes the scan data underlying one of the six reference figures with
/// frozen parameter choices; see README for the exact grids. Returns a note
/// as run_scan does.
std::string write_figure(int figure, std::ostream& out);

} // namespace wva
