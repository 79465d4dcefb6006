// SPDX-License-Identifier: Apache-2.0
//
// hsf: command-line front end for the graphene hypersurface toolkit.
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hsf/cli/commands.hpp"

namespace {

using namespace hsf;
using namespace hsf::cli;

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream& stream() { return file ? *file : std::cout; }
};

Output open_output(const std::string& path) {
    Output o;
    if (!path.empty() && path != "-") {
        o.file = std::make_unique<std::ofstream>(path);
        if (!*o.file) throw ConfigError("cannot open output file '" + path + "'");
    }
    return o;
}

RunConfig load_or_default(const std::string& path) {
    if (path.empty()) return RunConfig{};
    return load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graphene hypersurface THz absorber toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--out", out_path, "output file (default: stdout)");
    };

    std::optional<double> f_lo, f_hi, theta, band_lo, band_hi, mu_lo, mu_hi, target, wavelength;
    std::optional<std::size_t> n_points;
    std::string pol;
    bool full_kubo = false;
    double theta_i = 0.0, theta_r = 0.0;
    std::string in_path;

    auto* conductivity = app.add_subcommand("conductivity", "graphene sheet conductivity vs frequency");
    add_common(conductivity);
    conductivity->add_option("--f-lo", f_lo, "start frequency (Hz)");
    conductivity->add_option("--f-hi", f_hi, "stop frequency (Hz)");
    conductivity->add_option("-n,--n", n_points, "number of points");
    conductivity->add_flag("--full-kubo", full_kubo, "add full Kubo columns");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "absorber reflection/absorption/input impedance");
    add_common(spectrum_cmd);
    spectrum_cmd->add_option("--f-lo", f_lo, "start frequency (Hz)");
    spectrum_cmd->add_option("--f-hi", f_hi, "stop frequency (Hz)");
    spectrum_cmd->add_option("-n,--n", n_points, "number of points");
    spectrum_cmd->add_option("--theta", theta, "incidence angle (deg)");
    spectrum_cmd->add_option("--pol", pol, "polarization: te | tm");

    auto* calibrate_cmd = app.add_subcommand("calibrate", "fit the homogenization model and store it in the config");
    add_common(calibrate_cmd);
    calibrate_cmd->add_option("--target", target, "resonance frequency to calibrate to (Hz)");

    auto* design = app.add_subcommand("design", "supercell size for a target reflection angle");
    add_common(design);
    design->add_option("--theta-i", theta_i, "incidence angle (deg)")->required();
    design->add_option("--theta-r", theta_r, "target reflection angle (deg)")->required();
    design->add_option("--wavelength", wavelength, "free-space wavelength (m), default c0/design frequency");

    auto* table2 = app.add_subcommand("table2", "anomalous reflection angles of the reference designs");
    add_common(table2);
    table2->add_option("--wavelength", wavelength, "free-space wavelength (m), default c0/design frequency");

    auto* reconfigure = app.add_subcommand("reconfigure", "track the resonance over a chemical-potential sweep");
    add_common(reconfigure);
    reconfigure->add_option("--mu-lo", mu_lo, "lowest chemical potential (eV)");
    reconfigure->add_option("--mu-hi", mu_hi, "highest chemical potential (eV)");
    reconfigure->add_option("-n,--n", n_points, "number of steps");
    reconfigure->add_option("--band-lo", band_lo, "resonance search band start (Hz)");
    reconfigure->add_option("--band-hi", band_hi, "resonance search band stop (Hz)");

    auto* retrieve_cmd = app.add_subcommand("retrieve", "effective parameters from two-port S-parameters");
    add_common(retrieve_cmd);
    retrieve_cmd->add_option("--in", in_path, "S-parameter CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : config_error;
    }

    try {
        RunConfig cfg = load_or_default(config_path);
        const auto& sw = cfg.sweep;

        if (*conductivity) {
            Output o = open_output(out_path);
            cmd_conductivity(cfg, f_lo.value_or(sw.f_lo), f_hi.value_or(sw.f_hi), n_points.value_or(sw.n), full_kubo,
                             o.stream());
        } else if (*spectrum_cmd) {
            Output o = open_output(out_path);
            const Polarization p = hsf::cli::detail::parse_polarization(pol.empty() ? sw.polarization : pol);
            cmd_spectrum(cfg, f_lo.value_or(sw.f_lo), f_hi.value_or(sw.f_hi), n_points.value_or(sw.n),
                         theta.value_or(sw.theta_deg), p, o.stream(), std::cerr);
        } else if (*calibrate_cmd) {
            if (config_path.empty()) throw ConfigError("calibrate needs --config <path> to store the result");
            const RunConfig updated = cmd_calibrate(cfg, target.value_or(cfg.model.target_f_hz), std::cerr);
            save_config(updated, out_path.empty() ? config_path : out_path);
        } else if (*design) {
            Output o = open_output(out_path);
            cmd_design(cfg, theta_i, theta_r, wavelength.value_or(default_wavelength(cfg)), o.stream());
        } else if (*table2) {
            Output o = open_output(out_path);
            cmd_table2(cfg, wavelength.value_or(default_wavelength(cfg)), o.stream());
        } else if (*reconfigure) {
            Output o = open_output(out_path);
            cmd_reconfigure(cfg, mu_lo.value_or(sw.mu_lo_ev), mu_hi.value_or(sw.mu_hi_ev),
                            n_points.value_or(sw.mu_steps), band_lo.value_or(sw.band_lo),
                            band_hi.value_or(sw.band_hi), o.stream(), std::cerr);
        } else if (*retrieve_cmd) {
            std::ifstream in(in_path);
            if (!in) throw ConfigError("cannot open input file '" + in_path + "'");
            Output o = open_output(out_path);
            cmd_retrieve(in, o.stream(), std::cerr);
        }
    } catch (const hsf::CalibrationError& e) {
        std::cerr << "error: " << e.what() << "; achievable target range [" << num(e.achievable_lo()) << ", "
                  << num(e.achievable_hi()) << "] Hz\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return ok;
}
