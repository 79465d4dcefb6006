// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hsf/graphene.hpp"
#include "hsf/homogenization.hpp"

namespace hsf {

struct ReconfigPoint {
    double mu_c_ev = 0.0;
    double f_res = 0.0;   // Hz
    double a_peak = 0.0;
    double e0 = 0.0;      // V/m
};

struct ReconfigBand {
    double f_lo = 1.5e12;
    double f_hi = 4.5e12;
};

/// Tracks the absorption peak and the required gate field while the chemical
/// potential steps uniformly from `mu_lo_ev` to `mu_hi_ev` (inclusive).
/// `base` supplies tau, temperature, t_g and v_f; its mu_c is overridden.
inline std::vector<ReconfigPoint> sweep_mu(const UnitCellGeometry& g, const Materials& m,
                                           const HomogenizationModel& model, const GrapheneState& base,
                                           double mu_lo_ev, double mu_hi_ev, std::size_t n_steps,
                                           const ReconfigBand& band = {}) {
    detail::require(model.calibrated, "reconfiguration sweep needs a calibrated model");
    detail::require(std::isfinite(mu_lo_ev) && mu_lo_ev > 0.0, "mu_lo must be positive");
    detail::require(std::isfinite(mu_hi_ev) && mu_lo_ev < mu_hi_ev, "mu_lo must be below mu_hi");
    detail::require(n_steps >= 2, "need at least two chemical-potential steps");

    std::vector<ReconfigPoint> out;
    out.reserve(n_steps);
    for (double mu_ev : linspace(mu_lo_ev, mu_hi_ev, n_steps)) {
        GrapheneState state = base;
        state.mu_c = mu_ev * C::eV;
        state.validate();
        Resonance res;
        try {
            res = find_resonance(state, g, model, m, band.f_lo, band.f_hi);
        } catch (const NoResonanceError& e) {
            throw NoResonanceError(std::string(e.what()) + " at mu_c = " + std::to_string(mu_ev) + " eV");
        }
        out.push_back({mu_ev, res.frequency, res.absorptance, bias_field(state.mu_c, state.temperature, state.v_f)});
    }
    return out;
}

}  // namespace hsf
