// SPDX-License-Identifier: Apache-2.0
//
// JSON run configuration. Physical quantities are SI except mu_c_eV and
// tau_ps. Unknown keys are rejected by name.
#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hsf/error.hpp"
#include "hsf/graphene.hpp"
#include "hsf/homogenization.hpp"

namespace hsf::cli {

class ConfigError : public Error {
  public:
    using Error::Error;
};

struct SweepConfig {
    double f_lo = 1.0e12;
    double f_hi = 4.0e12;
    std::size_t n = 401;
    double theta_deg = 0.0;
    std::string polarization = "te";
    double mu_lo_ev = 0.5;
    double mu_hi_ev = 0.65;
    std::size_t mu_steps = 7;
    double band_lo = 1.5e12;
    double band_hi = 4.5e12;
};

struct ModelConfig {
    double kappa = 1.0;
    double sheet_scale = 1.0;
    bool calibrated = false;
    double target_f_hz = 2.5e12;
    std::string comment;
};

struct RunConfig {
    double mu_c_ev = 0.5;
    double tau_ps = 1.0;
    double temperature = 300.0;
    double t_g = 0.335e-9;
    double v_f = 1.0e6;
    UnitCellGeometry geometry;
    Materials materials;
    ModelConfig model;
    SweepConfig sweep;
    double design_f_hz = 2.5e12;

    GrapheneState graphene() const {
        return GrapheneState::from_ev(mu_c_ev, tau_ps * 1e-12, temperature, t_g, v_f);
    }
    HomogenizationModel homogenization() const { return {model.kappa, model.sheet_scale, model.calibrated}; }

    void validate() const {
        try {
            graphene();
            geometry.validate();
            materials.validate();
            homogenization().validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("invalid configuration: ") + e.what());
        }
        auto need = [](bool ok, const char* msg) {
            if (!ok) throw ConfigError(std::string("invalid configuration: ") + msg);
        };
        need(sweep.f_lo > 0.0 && sweep.f_lo < sweep.f_hi, "sweep.f_lo must be positive and below sweep.f_hi");
        need(sweep.n >= 2, "sweep.n must be at least 2");
        need(sweep.theta_deg >= 0.0 && sweep.theta_deg < 90.0, "sweep.theta_deg must be in [0, 90)");
        need(sweep.polarization == "te" || sweep.polarization == "tm", "sweep.polarization must be te or tm");
        need(sweep.mu_lo_ev > 0.0 && sweep.mu_lo_ev < sweep.mu_hi_ev, "sweep.mu_lo_eV must be in (0, mu_hi_eV)");
        need(sweep.mu_steps >= 2, "sweep.mu_steps must be at least 2");
        need(sweep.band_lo > 0.0 && sweep.band_lo < sweep.band_hi, "sweep.band_lo must be below sweep.band_hi");
        need(model.target_f_hz > 0.0, "model.target_f_Hz must be positive");
        need(design_f_hz > 0.0, "design.frequency_Hz must be positive");
    }
};

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& section, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError("configuration section '" + section + "' must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown configuration key '" + (section.empty() ? key : section + "." + key) + "'");
        }
    }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& section) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("configuration key '" + section + "." + key + "' has the wrong type");
    }
}

}  // namespace detail

inline RunConfig config_from_json(const nlohmann::json& doc) {
    using detail::read;
    RunConfig c;
    detail::reject_unknown(doc, "", {"graphene", "geometry", "materials", "model", "sweep", "design"});
    if (doc.contains("graphene")) {
        const auto& g = doc["graphene"];
        detail::reject_unknown(g, "graphene", {"mu_c_eV", "tau_ps", "T_K", "t_g_m", "v_f"});
        read(g, "mu_c_eV", c.mu_c_ev, "graphene");
        read(g, "tau_ps", c.tau_ps, "graphene");
        read(g, "T_K", c.temperature, "graphene");
        read(g, "t_g_m", c.t_g, "graphene");
        read(g, "v_f", c.v_f, "graphene");
    }
    if (doc.contains("geometry")) {
        const auto& g = doc["geometry"];
        detail::reject_unknown(g, "geometry", {"P", "d", "h", "t_ox", "t_poly"});
        read(g, "P", c.geometry.period, "geometry");
        read(g, "d", c.geometry.patch, "geometry");
        read(g, "h", c.geometry.substrate, "geometry");
        read(g, "t_ox", c.geometry.spacer, "geometry");
        read(g, "t_poly", c.geometry.gate, "geometry");
    }
    if (doc.contains("materials")) {
        const auto& m = doc["materials"];
        detail::reject_unknown(m, "materials", {"eps_Si", "eps_SiO2", "eps_poly"});
        read(m, "eps_Si", c.materials.eps_si, "materials");
        read(m, "eps_SiO2", c.materials.eps_sio2, "materials");
        read(m, "eps_poly", c.materials.eps_poly, "materials");
    }
    if (doc.contains("model")) {
        const auto& m = doc["model"];
        detail::reject_unknown(m, "model", {"kappa", "sheet_scale", "calibrated", "target_f_Hz", "comment"});
        read(m, "kappa", c.model.kappa, "model");
        read(m, "sheet_scale", c.model.sheet_scale, "model");
        read(m, "calibrated", c.model.calibrated, "model");
        read(m, "target_f_Hz", c.model.target_f_hz, "model");
        read(m, "comment", c.model.comment, "model");
    }
    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        detail::reject_unknown(s, "sweep",
                               {"f_lo", "f_hi", "n", "theta_deg", "polarization", "mu_lo_eV", "mu_hi_eV",
                                "mu_steps", "band_lo", "band_hi"});
        read(s, "f_lo", c.sweep.f_lo, "sweep");
        read(s, "f_hi", c.sweep.f_hi, "sweep");
        read(s, "n", c.sweep.n, "sweep");
        read(s, "theta_deg", c.sweep.theta_deg, "sweep");
        read(s, "polarization", c.sweep.polarization, "sweep");
        read(s, "mu_lo_eV", c.sweep.mu_lo_ev, "sweep");
        read(s, "mu_hi_eV", c.sweep.mu_hi_ev, "sweep");
        read(s, "mu_steps", c.sweep.mu_steps, "sweep");
        read(s, "band_lo", c.sweep.band_lo, "sweep");
        read(s, "band_hi", c.sweep.band_hi, "sweep");
    }
    if (doc.contains("design")) {
        const auto& d = doc["design"];
        detail::reject_unknown(d, "design", {"frequency_Hz"});
        read(d, "frequency_Hz", c.design_f_hz, "design");
    }
    c.validate();
    return c;
}

inline nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json model = {{"kappa", c.model.kappa},
                            {"sheet_scale", c.model.sheet_scale},
                            {"calibrated", c.model.calibrated},
                            {"target_f_Hz", c.model.target_f_hz}};
    if (!c.model.comment.empty()) model["comment"] = c.model.comment;
    return {
        {"graphene", {{"mu_c_eV", c.mu_c_ev}, {"tau_ps", c.tau_ps}, {"T_K", c.temperature}, {"t_g_m", c.t_g},
                      {"v_f", c.v_f}}},
        {"geometry", {{"P", c.geometry.period}, {"d", c.geometry.patch}, {"h", c.geometry.substrate},
                      {"t_ox", c.geometry.spacer}, {"t_poly", c.geometry.gate}}},
        {"materials", {{"eps_Si", c.materials.eps_si}, {"eps_SiO2", c.materials.eps_sio2},
                       {"eps_poly", c.materials.eps_poly}}},
        {"model", model},
        {"sweep", {{"f_lo", c.sweep.f_lo}, {"f_hi", c.sweep.f_hi}, {"n", c.sweep.n},
                   {"theta_deg", c.sweep.theta_deg}, {"polarization", c.sweep.polarization},
                   {"mu_lo_eV", c.sweep.mu_lo_ev}, {"mu_hi_eV", c.sweep.mu_hi_ev},
                   {"mu_steps", c.sweep.mu_steps}, {"band_lo", c.sweep.band_lo}, {"band_hi", c.sweep.band_hi}}},
        {"design", {{"frequency_Hz", c.design_f_hz}}},
    };
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("configuration file '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

inline void save_config(const RunConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write configuration file '" + path + "'");
    out << config_to_json(c).dump(2) << '\n';
}

}  // namespace hsf::cli
