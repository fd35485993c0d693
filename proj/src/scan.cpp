#include "wva/scan.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "wva/csv.hpp"
#include "wva/fisher.hpp"
#include "wva/noise.hpp"

namespace wva {

namespace {

constexpr double kPi = std::numbers::pi;

const std::set<std::string> kScanVars = {"g", "theta", "phi", "d", "sigma", "J", "Jp"};

struct Point {
    double theta, phi, d, sigma, j, jp;
};

PureState default_pre_state() {
    return PureState(Complex(1, 0), Complex(1, 0));  // (|1> + |2>)/sqrt(2)
}

double evaluate(ScanQuantity q, const Point& pt) {
    const PureState pre = default_pre_state();
    const PureState post = state_from_angles(pt.theta, pt.phi);
    const MeterConfig m(pt.d, pt.sigma);
    switch (q) {
        case ScanQuantity::Gamma:
            return postselection_probability_x(pre, post, m);
        case ScanQuantity::Lambda:
            return snr_report(pre, post, m).lambda;
        case ScanQuantity::LambdaTilde:
            return snr_report(pre, post, m).lambda_tilde;
        case ScanQuantity::EtaSigma:
            return snr_report(pre, post, m).eta_sigma;
        case ScanQuantity::RFactor:
            return snr_report(pre, post, m).r_factor;
        case ScanQuantity::FisherRatio:
            return crb_report(pre, post, m).rhs;
        case ScanQuantity::Tradeoff:
            return crb_report(pre, post, m).tradeoff;
        case ScanQuantity::CrbSlack:
            return crb_report(pre, post, m).slack;
        case ScanQuantity::SnrPBasis:
            return std::abs(p_basis_p0_moments(pre, post, m, pt.jp).snr);
    }
    throw std::logic_error("evaluate: unhandled quantity");
}

std::string status_of(const std::exception& e) {
    if (dynamic_cast<const OrthogonalSelection*>(&e)) return "orthogonal_selection";
    if (dynamic_cast<const ZeroLikelihood*>(&e)) return "zero_likelihood";
    if (dynamic_cast<const NonPositiveDensity*>(&e)) return "non_positive_density";
    if (dynamic_cast<const DegenerateVariance*>(&e)) return "degenerate_variance";
    if (dynamic_cast<const QuadratureError*>(&e)) return "quadrature_error";
    return "error";
}

double axis_value(const ScanSpec::Axis& ax, int k) {
    const double t = ax.points == 1 ? 0.0 : static_cast<double>(k) / (ax.points - 1);
    if (ax.log)
        return std::exp(std::log(ax.lo) + t * (std::log(ax.hi) - std::log(ax.lo)));
    return ax.lo + t * (ax.hi - ax.lo);
}

} // namespace

ScanQuantity scan_quantity_from_name(const std::string& name, int line) {
    if (name == "gamma") return ScanQuantity::Gamma;
    if (name == "lambda") return ScanQuantity::Lambda;
    if (name == "lambda_tilde") return ScanQuantity::LambdaTilde;
    if (name == "eta_sigma") return ScanQuantity::EtaSigma;
    if (name == "r_factor") return ScanQuantity::RFactor;
    if (name == "fisher_ratio") return ScanQuantity::FisherRatio;
    if (name == "tradeoff") return ScanQuantity::Tradeoff;
    if (name == "crb_slack") return ScanQuantity::CrbSlack;
    if (name == "snr_p_basis") return ScanQuantity::SnrPBasis;
    throw SpecParseError(line, "unknown quantity '" + name + "'");
}

std::string scan_quantity_name(ScanQuantity q) {
    switch (q) {
        case ScanQuantity::Gamma: return "gamma";
        case ScanQuantity::Lambda: return "lambda";
        case ScanQuantity::LambdaTilde: return "lambda_tilde";
        case ScanQuantity::EtaSigma: return "eta_sigma";
        case ScanQuantity::RFactor: return "r_factor";
        case ScanQuantity::FisherRatio: return "fisher_ratio";
        case ScanQuantity::Tradeoff: return "tradeoff";
        case ScanQuantity::CrbSlack: return "crb_slack";
        case ScanQuantity::SnrPBasis: return "snr_p_basis";
    }
    return "?";
}

ScanSpec ScanSpec::parse(const Config& cfg, const std::vector<std::string>& overrides) {
    // Flatten sections to dotted keys; repeated [axis] blocks become
    // axis1.*, axis2.*.
    std::map<std::string, std::pair<std::string, int>> flat;
    int axis_count = 0;
    for (const auto& sec : cfg.sections()) {
        std::string prefix = sec.name;
        if (sec.name == "axis") prefix = "axis" + std::to_string(++axis_count);
        for (const auto& e : sec.entries)
            flat[prefix + "." + e.key] = {e.value, e.line};
    }
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos || eq == 0)
            throw SpecParseError(0, "override must look like section.key=value: '" + ov + "'");
        flat[ov.substr(0, eq)] = {ov.substr(eq + 1), 0};
        if (ov.compare(0, 5, "axis1") == 0) axis_count = std::max(axis_count, 1);
        if (ov.compare(0, 5, "axis2") == 0) axis_count = std::max(axis_count, 2);
    }

    auto get = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        auto it = flat.find(key);
        if (it == flat.end()) return std::nullopt;
        return it->second;
    };

    ScanSpec spec;
    const auto quantity = get("scan.quantity");
    if (!quantity)
        throw SpecParseError(0, "missing scan.quantity");
    spec.quantity = scan_quantity_from_name(quantity->first, quantity->second);

    if (axis_count < 1 || axis_count > 2)
        throw SpecParseError(0, "need one or two [axis] sections, got " +
                                    std::to_string(axis_count));
    for (int a = 1; a <= axis_count; ++a) {
        const std::string p = "axis" + std::to_string(a) + ".";
        auto need = [&](const std::string& key) {
            auto v = get(p + key);
            if (!v) throw SpecParseError(0, "missing " + p + key);
            return *v;
        };
        Axis ax;
        const auto var = need("var");
        ax.var = var.first;
        if (!kScanVars.count(ax.var))
            throw SpecParseError(var.second, "unknown scan variable '" + ax.var + "'");
        const auto lo = need("min");
        const auto hi = need("max");
        const auto pts = need("points");
        ax.lo = parse_real(lo.first, lo.second);
        ax.hi = parse_real(hi.first, hi.second);
        ax.points = static_cast<int>(parse_int(pts.first, pts.second));
        if (auto scale = get(p + "scale")) {
            if (scale->first == "log")
                ax.log = true;
            else if (scale->first != "linear")
                throw SpecParseError(scale->second, "scale must be linear or log");
        }
        if (ax.points < 2)
            throw SpecParseError(pts.second, "axis needs at least 2 points");
        if (!(ax.lo < ax.hi))
            throw SpecParseError(lo.second, "axis needs min < max");
        if (ax.log && !(ax.lo > 0))
            throw SpecParseError(lo.second, "log axis needs min > 0");
        spec.axes.push_back(ax);
    }
    if (spec.axes.size() == 2 && spec.axes[0].var == spec.axes[1].var)
        throw SpecParseError(0, "the two axes scan the same variable");

    for (const auto& [key, val] : flat) {
        if (key.compare(0, 6, "fixed.") != 0) continue;
        const std::string var = key.substr(6);
        if (!kScanVars.count(var))
            throw SpecParseError(val.second, "unknown fixed parameter '" + var + "'");
        spec.fixed[var] = parse_real(val.first, val.second);
    }

    auto has = [&](const std::string& var) {
        if (spec.fixed.count(var)) return true;
        for (const auto& ax : spec.axes)
            if (ax.var == var) return true;
        return false;
    };
    if (has("g") && has("d"))
        throw SpecParseError(0, "specify either g or d, not both");
    // Validity ranges for whatever is fixed.
    auto fixed_positive = [&](const std::string& var) {
        if (spec.fixed.count(var) && !(spec.fixed[var] > 0))
            throw SpecParseError(0, "fixed " + var + " must be > 0");
    };
    fixed_positive("d");
    fixed_positive("sigma");
    fixed_positive("g");
    for (const std::string var : {"J", "Jp"})
        if (spec.fixed.count(var) && spec.fixed[var] < 0)
            throw SpecParseError(0, "fixed " + var + " must be >= 0");
    return spec;
}

std::string run_scan(const ScanSpec& spec, std::ostream& out) {
    CsvWriter csv(out);
    std::vector<std::string> cols;
    for (const auto& ax : spec.axes) cols.push_back(ax.var);
    cols.push_back(scan_quantity_name(spec.quantity));
    cols.push_back("status");
    csv.header(cols);

    const int n0 = spec.axes[0].points;
    const int n1 = spec.axes.size() > 1 ? spec.axes[1].points : 1;
    for (int k0 = 0; k0 < n0; ++k0) {
        for (int k1 = 0; k1 < n1; ++k1) {
            std::map<std::string, double> vars = spec.fixed;
            vars[spec.axes[0].var] = axis_value(spec.axes[0], k0);
            if (spec.axes.size() > 1)
                vars[spec.axes[1].var] = axis_value(spec.axes[1], k1);

            auto value_of = [&](const std::string& var, double dflt) {
                auto it = vars.find(var);
                return it == vars.end() ? dflt : it->second;
            };
            Point pt{};
            pt.theta = value_of("theta", 1.3 * kPi);
            pt.phi = value_of("phi", 0.0);
            pt.sigma = value_of("sigma", 1.0);
            pt.j = value_of("J", 0.0);
            pt.jp = value_of("Jp", 0.0);
            if (vars.count("d"))
                pt.d = vars.at("d");
            else
                pt.d = 2.0 * pt.sigma * std::sqrt(value_of("g", 0.05));

            std::vector<std::string> cells;
            cells.push_back(format_double(vars.at(spec.axes[0].var)));
            if (spec.axes.size() > 1)
                cells.push_back(format_double(vars.at(spec.axes[1].var)));
            try {
                cells.push_back(format_double(evaluate(spec.quantity, pt)));
                cells.push_back("ok");
            } catch (const std::exception& e) {
                cells.push_back("nan");
                cells.push_back(status_of(e));
            }
            csv.row(cells);
        }
    }
    return "";
}

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k)
        g[k] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (n - 1));
    return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
    return g;
}

const std::vector<double> kFigureThetas = {1.3 * kPi, 1.49 * kPi, 1.6 * kPi};

std::string figure_1(std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"theta", "g", "gamma", "lambda", "eta_sigma", "lambda_tilde"});
    const PureState pre = default_pre_state();
    for (double theta : kFigureThetas) {
        const PureState post = state_from_angles(theta, 0.0);
        for (double g : log_grid(1e-4, 1.0, 200)) {
            const MeterConfig m(2.0 * std::sqrt(g), 1.0);
            const auto rep = snr_report(pre, post, m);
            csv.row({format_double(theta), format_double(g), format_double(rep.gamma),
                     format_double(rep.lambda), format_double(rep.eta_sigma),
                     format_double(rep.lambda_tilde)});
        }
    }
    return "";
}

std::string figure_2(std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"panel", "theta", "g", "eta", "eta_aav", "r_factor"});
    const PureState pre = default_pre_state();
    double max_r = 0.0;
    // Panels (a) and (c): theta sweep toward the orthogonal point at two
    // strengths; eta_aav = |Re A_w| is the vanishing-strength prediction.
    for (double g : {0.05, 0.2}) {
        const MeterConfig m(2.0 * std::sqrt(g), 1.0);
        for (double theta : lin_grid(1.05 * kPi, 1.95 * kPi, 200)) {
            const PureState post = state_from_angles(theta, 0.0);
            const auto rep = snr_report(pre, post, m);
            const double eta_aav = std::abs(weak_value(pre, post).real());
            max_r = std::max(max_r, rep.r_factor);
            csv.row({"theta_scan", format_double(theta), format_double(g),
                     format_double(rep.eta), format_double(eta_aav),
                     format_double(rep.r_factor)});
        }
    }
    // Panel (b): strength sweep for the three reference postselections.
    for (double theta : kFigureThetas) {
        const PureState post = state_from_angles(theta, 0.0);
        for (double g : log_grid(1e-4, 1.0, 200)) {
            const MeterConfig m(2.0 * std::sqrt(g), 1.0);
            const auto rep = snr_report(pre, post, m);
            const double eta_aav = std::abs(weak_value(pre, post).real());
            max_r = std::max(max_r, rep.r_factor);
            csv.row({"g_scan", format_double(theta), format_double(g),
                     format_double(rep.eta), format_double(eta_aav),
                     format_double(rep.r_factor)});
        }
    }
    return "max r_factor = " + format_double(max_r);
}

std::string figure_3(std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"theta", "g", "fisher_ratio", "tradeoff"});
    const PureState pre = default_pre_state();
    for (double theta : kFigureThetas) {
        const PureState post = state_from_angles(theta, 0.0);
        for (double g : log_grid(1e-4, 1.0, 60)) {
            const MeterConfig m(2.0 * std::sqrt(g), 1.0);
            const auto rep = crb_report(pre, post, m);
            csv.row({format_double(theta), format_double(g), format_double(rep.rhs),
                     format_double(rep.tradeoff)});
        }
    }
    return "";
}

std::string figure_4(std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"theta", "g", "crb_lhs", "crb_rhs", "slack"});
    const PureState pre = default_pre_state();
    for (double theta : kFigureThetas) {
        const PureState post = state_from_angles(theta, 0.0);
        for (double g : log_grid(1e-4, 1.0, 60)) {
            const MeterConfig m(2.0 * std::sqrt(g), 1.0);
            const auto rep = crb_report(pre, post, m);
            csv.row({format_double(theta), format_double(g), format_double(rep.lhs),
                     format_double(rep.rhs), format_double(rep.slack)});
        }
    }
    return "";
}

std::string figure_5(std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"j", "snr_imaginary_wva", "snr_standard"});
    const PureState pre = default_pre_state();
    const PureState post = state_from_angles(1.49 * kPi, kPi / 4.0);
    const MeterConfig m(1.0, 10.0);
    const double snr_wva = std::abs(p_basis_x0_moments(pre, post, m).snr);
    for (double j : lin_grid(0.0, 20.0, 200))
        csv.row({format_double(j), format_double(snr_wva),
                 format_double(standard_snr(m, j))});
    return "";
}

std::string figure_6(std::ostream& out) {
    CsvWriter csv(out);
    csv.header({"sigma", "jp", "snr"});
    const PureState pre = default_pre_state();
    const PureState post = state_from_angles(1.49 * kPi, kPi / 4.0);
    for (double sigma : {10.0, 20.0, 100.0}) {
        const MeterConfig m(1.0, sigma);
        for (double jp : lin_grid(0.0, 1.2, 200)) {
            const auto rep = p_basis_p0_moments(pre, post, m, jp);
            csv.row({format_double(sigma), format_double(jp),
                     format_double(std::abs(rep.snr))});
        }
    }
    return "";
}

} // namespace

std::string write_figure(int figure, std::ostream& out) {
    switch (figure) {
        case 1: return figure_1(out);
        case 2: return figure_2(out);
        case 3: return figure_3(out);
        case 4: return figure_4(out);
        case 5: return figure_5(out);
        case 6: return figure_6(out);
        default:
            throw std::invalid_argument("figure number must be 1..6");
    }
}

} // namespace wva
