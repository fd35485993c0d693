#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wva/mc_validate.hpp"
#include "wva/noise.hpp"
#include "wva/scan.hpp"

namespace {

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw wva::IoError("cannot open output file '" + path + "'");
    out << contents;
    if (!out)
        throw wva::IoError("failed writing '" + path + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Weak-value amplification toolkit: figure data, parameter "
                 "scans, Monte Carlo validation and noise-optimum search"};
    app.require_subcommand(1);

    // --- figure ---
    auto* fig = app.add_subcommand("figure", "emit the frozen scan data behind one reference figure");
    int figure_number = 0;
    std::string fig_out;
    fig->add_option("number", figure_number, "figure number (1..6)")->required();
    fig->add_option("--out", fig_out, "output CSV path")->required();

    // --- scan ---
    auto* scan = app.add_subcommand("scan", "evaluate a quantity over a declarative grid");
    std::string scan_config, scan_out;
    std::vector<std::string> scan_sets;
    scan->add_option("--config", scan_config, "scan config file")->required();
    scan->add_option("--out", scan_out, "output CSV path")->required();
    scan->add_option("--set", scan_sets,
                     "override a config value, e.g. --set fixed.sigma=2");

    // --- mc-validate ---
    auto* mcv = app.add_subcommand("mc-validate", "z-test the simulator against the closed forms");
    std::string mcv_config, mcv_out;
    std::uint64_t mcv_seed = 20240817;
    unsigned mcv_threads = 1;
    std::uint64_t mcv_trials = 0;
    mcv->add_option("--config", mcv_config, "validation case file (default: built-in 8-case suite)");
    mcv->add_option("--out", mcv_out, "output JSON path")->required();
    mcv->add_option("--seed", mcv_seed, "suite RNG seed");
    mcv->add_option("--threads", mcv_threads, "worker threads per case");
    mcv->add_option("--trials", mcv_trials, "override the per-case trial count");

    // --- optimize-jp ---
    auto* opt = app.add_subcommand("optimize-jp", "find the momentum-jitter width maximizing the SNR");
    double o_sigma = 100.0, o_d = 1.0, o_theta = 1.49 * std::numbers::pi,
           o_phi = std::numbers::pi / 4.0, o_lo = 0.0, o_hi = 1.2;
    std::string opt_out;
    opt->add_option("--sigma", o_sigma, "meter width");
    opt->add_option("--d", o_d, "displacement");
    opt->add_option("--theta", o_theta, "postselection polar angle (radians)");
    opt->add_option("--phi", o_phi, "postselection phase (radians)");
    opt->add_option("--jp-min", o_lo, "search range lower edge");
    opt->add_option("--jp-max", o_hi, "search range upper edge");
    opt->add_option("--out", opt_out, "output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (fig->parsed()) {
        std::ostringstream buf;
        const std::string note = wva::write_figure(figure_number, buf);
        write_file(fig_out, buf.str());
        if (!note.empty()) std::cerr << note << '\n';
        return 0;
    }

    if (scan->parsed()) {
        const auto cfg = wva::Config::parse_file(scan_config);
        const auto spec = wva::ScanSpec::parse(cfg, scan_sets);
        std::ostringstream buf;
        const std::string note = wva::run_scan(spec, buf);
        write_file(scan_out, buf.str());
        if (!note.empty()) std::cerr << note << '\n';
        return 0;
    }

    if (mcv->parsed()) {
        const auto cases = mcv_config.empty()
                               ? wva::default_validation_suite()
                               : wva::parse_validation_suite(
                                     wva::Config::parse_file(mcv_config));
        const auto suite =
            wva::run_validation_suite(cases, mcv_seed, mcv_threads, mcv_trials);
        write_file(mcv_out, wva::suite_report_json(suite));
        for (const auto& r : suite.results)
            std::cerr << (r.pass ? "pass " : "FAIL ") << r.case_name << '\n';
        return suite.all_pass ? 0 : 1;
    }

    if (opt->parsed()) {
        const wva::PureState pre(wva::Complex(1, 0), wva::Complex(1, 0));
        const wva::PureState post = wva::state_from_angles(o_theta, o_phi);
        const wva::MeterConfig m(o_d, o_sigma);
        const auto best = wva::find_optimal_jp(pre, post, m, o_lo, o_hi);
        const double snr0 = std::abs(wva::p_basis_x0_moments(pre, post, m).snr);
        nlohmann::json j{{"jp_star", best.jp_star},
                         {"snr_star", best.snr_star},
                         {"snr_noise_free", snr0},
                         {"gain_over_noise_free", best.snr_star / snr0},
                         {"unimodal", best.unimodal}};
        if (!best.unimodal)
            j["warning"] = "bracketing failed; values are the coarse grid maximum";
        write_file(opt_out, j.dump(2) + "\n");
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const wva::SpecParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
