// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the `hsf` executable. Each command writes
// CSV to `out` and diagnostics to `err`; errors surface as exceptions that
// `exit_code_for` maps onto the process exit status.
#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hsf/cli/config.hpp"
#include "hsf/graphene.hpp"
#include "hsf/homogenization.hpp"
#include "hsf/multilayer.hpp"
#include "hsf/reconfiguration.hpp"
#include "hsf/retrieval.hpp"
#include "hsf/supercell.hpp"

namespace hsf::cli {

enum ExitCode : int { ok = 0, config_error = 2, numerical_error = 3, calibration_failure = 4 };

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const CalibrationError*>(&e)) return calibration_failure;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e)) return config_error;
    if (dynamic_cast<const NumericalError*>(&e)) return numerical_error;
    return 1;
}

/// 17 significant digits, scientific.
inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace detail {

inline Polarization parse_polarization(const std::string& p) {
    if (p == "te" || p == "TE") return Polarization::TE;
    if (p == "tm" || p == "TM") return Polarization::TM;
    throw ConfigError("polarization must be 'te' or 'tm', got '" + p + "'");
}

inline void warn_if_uncalibrated(const RunConfig& cfg, std::ostream& err) {
    if (!cfg.model.calibrated) err << "warning: uncalibrated model (run `hsf calibrate`)\n";
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    return out;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace detail

inline void cmd_conductivity(const RunConfig& cfg, double f_lo, double f_hi, std::size_t n, bool full_kubo,
                             std::ostream& out) {
    const GrapheneState state = cfg.graphene();
    out << "f_Hz,re_sigma_S,im_sigma_S";
    if (full_kubo) out << ",re_sigma_kubo_S,im_sigma_kubo_S";
    out << '\n';
    for (double f : linspace(f_lo, f_hi, n)) {
        const complex s = sigma_intraband(f, state).value;
        out << num(f) << ',' << num(s.real()) << ',' << num(s.imag());
        if (full_kubo) {
            const complex k = sigma_full_kubo(f, state).value;
            out << ',' << num(k.real()) << ',' << num(k.imag());
        }
        out << '\n';
    }
}

inline void cmd_spectrum(const RunConfig& cfg, double f_lo, double f_hi, std::size_t n, double theta_deg,
                         Polarization pol, std::ostream& out, std::ostream& err) {
    detail::warn_if_uncalibrated(cfg, err);
    const GrapheneState state = cfg.graphene();
    const HomogenizationModel model = cfg.homogenization();
    Excitation ex;
    ex.theta_deg = theta_deg;
    ex.polarization = pol;
    const auto points = spectrum(
        [&](double f) { return build_hsf_stack(cfg.geometry, state, model, cfg.materials, f); }, f_lo, f_hi, n, ex);
    out << "f_Hz,reR,imR,A,reZin,imZin\n";
    for (const auto& p : points) {
        out << num(p.frequency) << ',' << num(p.r.real()) << ',' << num(p.r.imag()) << ',' << num(p.absorptance)
            << ',' << num(p.zin_norm.real()) << ',' << num(p.zin_norm.imag()) << '\n';
    }
}

/// Returns `cfg` with the calibrated model filled in.
inline RunConfig cmd_calibrate(RunConfig cfg, double target_f, std::ostream& err) {
    const HomogenizationModel m = calibrate(cfg.geometry, cfg.graphene(), cfg.materials, target_f,
                                            {cfg.sweep.f_lo, cfg.sweep.f_hi});
    cfg.model.kappa = m.kappa;
    cfg.model.sheet_scale = m.sheet_scale;
    cfg.model.calibrated = true;
    cfg.model.target_f_hz = target_f;
    cfg.model.comment = "calibrated " + detail::utc_timestamp() + " to " + num(target_f) + " Hz at mu_c = " +
                        num(cfg.mu_c_ev) + " eV";
    err << "kappa = " << num(m.kappa) << ", sheet_scale = " << num(m.sheet_scale) << '\n';
    return cfg;
}

inline double default_wavelength(const RunConfig& cfg) { return C::c0 / cfg.design_f_hz; }

inline void write_outcome(const ReflectionOutcome& o, std::ostream& out) {
    if (o.propagating())
        out << num(o.theta_r_deg());
    else
        out << "EVANESCENT";
    out << ',' << num(o.sin_theta_r);
}

inline void cmd_design(const RunConfig& cfg, double theta_i, double theta_r, double wavelength, std::ostream& out) {
    SupercellDesign d;
    try {
        d = design_supercell(theta_i, theta_r, wavelength, cfg.geometry.patch);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    out << "theta_i_deg,theta_r_target_deg,N_c,theta_r_deg_or_EVANESCENT,sin_theta_r\n";
    out << num(theta_i) << ',' << num(theta_r) << ',' << d.spec.cells << ',';
    write_outcome(d.achieved, out);
    out << '\n';
}

inline void cmd_table2(const RunConfig& cfg, double wavelength, std::ostream& out) {
    out << "theta_i_deg,N_c,theta_r_deg_or_EVANESCENT,sin_theta_r\n";
    for (const auto& row : table2_rows()) {
        const SupercellSpec spec{row.theta_i_deg, row.cells, cfg.geometry.patch, wavelength, 1.0};
        out << num(row.theta_i_deg) << ',' << row.cells << ',';
        write_outcome(reflection_angle(spec), out);
        out << '\n';
    }
}

inline void cmd_reconfigure(const RunConfig& cfg, double mu_lo, double mu_hi, std::size_t n, double band_lo,
                            double band_hi, std::ostream& out, std::ostream& err) {
    HomogenizationModel model = cfg.homogenization();
    if (!model.calibrated) {
        err << "warning: uncalibrated model; calibrating in memory to " << num(cfg.model.target_f_hz) << " Hz\n";
        model = calibrate(cfg.geometry, cfg.graphene(), cfg.materials, cfg.model.target_f_hz,
                          {cfg.sweep.f_lo, cfg.sweep.f_hi});
    }
    const auto points = sweep_mu(cfg.geometry, cfg.materials, model, cfg.graphene(), mu_lo, mu_hi, n,
                                 {band_lo, band_hi});
    out << "mu_c_eV,f_res_Hz,A_peak,E0_V_per_m\n";
    for (const auto& p : points)
        out << num(p.mu_c_ev) << ',' << num(p.f_res) << ',' << num(p.a_peak) << ',' << num(p.e0) << '\n';
}

/// Reads f_Hz, reS11, imS11, reS21, imS21, L_m rows.
inline std::vector<TwoPortSample> read_sparams_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("S-parameter CSV is empty");
    const std::vector<std::string> expected{"f_Hz", "reS11", "imS11", "reS21", "imS21", "L_m"};
    if (detail::split_csv(line) != expected)
        throw ConfigError("S-parameter CSV header must be f_Hz,reS11,imS11,reS21,imS21,L_m");
    std::vector<TwoPortSample> samples;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = detail::split_csv(line);
        if (cells.size() != 6) throw ConfigError("S-parameter CSV row " + std::to_string(row) + " needs 6 columns");
        double v[6];
        for (int i = 0; i < 6; ++i) {
            try {
                std::size_t used = 0;
                v[i] = std::stod(cells[i], &used);
                if (used != cells[i].size()) throw std::invalid_argument(cells[i]);
            } catch (const std::exception&) {
                throw ConfigError("S-parameter CSV row " + std::to_string(row) + ": '" + cells[i] +
                                  "' is not a number");
            }
        }
        samples.push_back({v[0], {v[1], v[2]}, {v[3], v[4]}, v[5]});
    }
    return samples;
}

inline void write_sparams_csv(const std::vector<TwoPortSample>& samples, std::ostream& out) {
    out << "f_Hz,reS11,imS11,reS21,imS21,L_m\n";
    for (const auto& s : samples)
        out << num(s.frequency) << ',' << num(s.s11.real()) << ',' << num(s.s11.imag()) << ',' << num(s.s21.real())
            << ',' << num(s.s21.imag()) << ',' << num(s.slab_thickness) << '\n';
}

/// Returns the number of flagged (branch-discontinuous) points.
inline std::size_t cmd_retrieve(std::istream& in, std::ostream& out, std::ostream& err) {
    const auto samples = read_sparams_csv(in);
    std::vector<RetrievedParams> params;
    try {
        params = retrieve_dispersion(samples);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    std::size_t flagged = 0;
    out << "f_Hz,re_n,im_n,re_z,im_z,re_eps,im_eps,re_mu,im_mu,branch\n";
    for (const auto& p : params) {
        flagged += p.flagged ? 1 : 0;
        out << num(p.frequency) << ',' << num(p.n.real()) << ',' << num(p.n.imag()) << ',' << num(p.z.real()) << ','
            << num(p.z.imag()) << ',' << num(p.eps_eff.real()) << ',' << num(p.eps_eff.imag()) << ','
            << num(p.mu_eff.real()) << ',' << num(p.mu_eff.imag()) << ',' << p.branch_index << '\n';
    }
    err << "flagged points: " << flagged << '\n';
    return flagged;
}

}  // namespace hsf::cli
