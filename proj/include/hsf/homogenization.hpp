// SPDX-License-Identifier: Apache-2.0
//
// Quasi-static homogenization of the graphene patch array and the full
// absorber stack built on it.
//
// The patch array is a series R-L-C sheet:
//
//   Z_s = s * (P/d)^2 / sigma  -  j / (omega * kappa * C_grid)
//   C_grid = (2 P eps0 eps_eff / pi) * ln(csc(pi (P - d) / (2 P)))
//
// `kappa` scales the inter-patch capacitance and `s` (sheet_scale) scales the
// graphene term. Both are fixed by `calibrate` so that the stack is matched
// (Z_in = Z0) at the target frequency.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hsf/constants.hpp"
#include "hsf/error.hpp"
#include "hsf/graphene.hpp"
#include "hsf/multilayer.hpp"

namespace hsf {

struct UnitCellGeometry {
    double period = 14e-6;     // P
    double patch = 8.5e-6;     // d
    double substrate = 9e-6;   // h, silicon
    double spacer = 50e-9;     // SiO2
    double gate = 50e-9;       // poly-Si

    void validate() const {
        detail::require_positive(period, "period");
        detail::require_positive(patch, "patch length");
        detail::require(patch < period, "patch length must be smaller than the period (gap closes)");
        detail::require_positive(substrate, "substrate height");
        detail::require_positive(spacer, "spacer thickness");
        detail::require_positive(gate, "gate thickness");
    }
};

/// Relative permittivities of the dielectric layers. Poly-Si is treated as a
/// lossless dielectric; at 50 nm it only matters for biasing.
struct Materials {
    double eps_si = 11.7;
    double eps_sio2 = 3.9;
    double eps_poly = 11.7;

    void validate() const {
        detail::require_positive(eps_si, "eps_Si");
        detail::require_positive(eps_sio2, "eps_SiO2");
        detail::require_positive(eps_poly, "eps_poly");
    }
};

struct HomogenizationModel {
    double kappa = 1.0;
    double sheet_scale = 1.0;
    bool calibrated = false;

    static constexpr double min_factor = 0.1;
    static constexpr double max_factor = 10.0;

    void validate() const {
        detail::require_positive(kappa, "kappa");
        detail::require_positive(sheet_scale, "sheet_scale");
    }
};

/// Mean of the relative permittivities on either side of the sheet.
inline double grid_permittivity(double eps_above, double eps_below) { return 0.5 * (eps_above + eps_below); }

/// Inter-patch capacitance for kappa = 1.
inline double grid_capacitance(const UnitCellGeometry& g, double eps_eff) {
    g.validate();
    const double p = g.period;
    const double gap_term = std::log(1.0 / std::sin(pi * (p - g.patch) / (2.0 * p)));
    return 2.0 * p * C::eps0 * eps_eff / pi * gap_term;
}

/// Graphene part of the patch-array impedance, before `sheet_scale`.
inline complex patch_graphene_term(const UnitCellGeometry& g, const SheetConductivity& sigma) {
    const double ratio = g.period / g.patch;
    return ratio * ratio / sigma.value;
}

inline complex patch_sheet_impedance(const UnitCellGeometry& g, const SheetConductivity& sigma,
                                     const HomogenizationModel& model, double eps_eff) {
    g.validate();
    model.validate();
    detail::require_positive(sigma.frequency, "frequency");
    detail::require(sigma.value.real() >= 0.0, "sheet conductivity must be passive");
    const double w = angular(sigma.frequency);
    const double cap = model.kappa * grid_capacitance(g, eps_eff);
    return model.sheet_scale * patch_graphene_term(g, sigma) - j / (w * cap);
}

/// Dielectric stack beneath the graphene: SiO2, poly-Si, Si, then PEC.
inline LayerStack build_substrate_stack(const UnitCellGeometry& g, const Materials& m) {
    LayerStack s;
    s.elements = {Layer{g.spacer, m.eps_sio2}, Layer{g.gate, m.eps_poly}, Layer{g.substrate, m.eps_si}};
    s.termination = PecTermination{};
    return s;
}

inline LayerStack build_hsf_stack(const UnitCellGeometry& g, const GrapheneState& state,
                                  const HomogenizationModel& model, const Materials& m, double frequency) {
    g.validate();
    m.validate();
    const SheetConductivity sigma = sigma_intraband(frequency, state);
    const complex zs = patch_sheet_impedance(g, sigma, model, grid_permittivity(1.0, m.eps_sio2));
    LayerStack s = build_substrate_stack(g, m);
    s.elements.insert(s.elements.begin(), SheetBoundary{1.0 / zs});
    return s;
}

/// Finite-conductance metal film used in place of the ideal ground when a
/// two-port (transmitting) version of the absorber is needed.
struct GroundFilm {
    double conductivity = 4.1e7;  // S/m, gold
    double thickness = 100e-9;    // m

    complex permittivity(double frequency) const {
        return 1.0 + conductivity / (j * angular(frequency) * C::eps0);
    }
};

/// Absorber as a slab in vacuum: sheet, SiO2, poly-Si, Si and, optionally, a
/// metal ground film, with free space behind. Without a film this is the
/// ground-free slab.
inline LayerStack build_hsf_two_port(const UnitCellGeometry& g, const GrapheneState& state,
                                     const HomogenizationModel& model, const Materials& m, double frequency,
                                     const std::optional<GroundFilm>& ground) {
    LayerStack s = build_hsf_stack(g, state, model, m, frequency);
    if (ground) s.elements.push_back(Layer{ground->thickness, ground->permittivity(frequency)});
    s.termination = HalfSpace{};
    return s;
}

struct Resonance {
    double frequency = 0.0;
    double absorptance = 0.0;
};

struct ResonanceSearch {
    std::size_t grid_points = 401;
    double rel_tol = 1e-4;
};

/// Global maximum of A(f) on [f_lo, f_hi]: uniform scan, then golden-section
/// refinement between the neighbours of the best grid point.
inline Resonance find_resonance(const std::function<double(double)>& absorptance, double f_lo, double f_hi,
                                const ResonanceSearch& opts = {}) {
    detail::require_positive(f_lo, "f_lo");
    detail::require(std::isfinite(f_hi) && f_lo < f_hi, "f_lo must be below f_hi");
    detail::require(opts.grid_points >= 201, "resonance scan needs at least 201 points");

    const std::vector<double> grid = linspace(f_lo, f_hi, opts.grid_points);
    std::size_t best = 0;
    double best_a = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = absorptance(grid[i]);
        if (a > best_a) {
            best_a = a;
            best = i;
        }
    }
    if (best == 0 || best + 1 == grid.size()) {
        throw NoResonanceError("no resonance in band [" + std::to_string(f_lo) + ", " + std::to_string(f_hi) +
                               "] Hz: absorptance peaks at the band edge");
    }

    constexpr double inv_phi = 0.6180339887498949;
    double a = grid[best - 1], b = grid[best + 1];
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = absorptance(x1), f2 = absorptance(x2);
    while ((b - a) > opts.rel_tol * 0.5 * (a + b)) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = absorptance(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = absorptance(x2);
        }
    }
    Resonance r{0.5 * (a + b), 0.0};
    r.absorptance = absorptance(r.frequency);
    if (best_a > r.absorptance) r = {grid[best], best_a};
    return r;
}

/// Absorptance of the HSF stack at normal incidence.
inline double hsf_absorptance(const UnitCellGeometry& g, const GrapheneState& state,
                              const HomogenizationModel& model, const Materials& m, double frequency) {
    Excitation ex;
    ex.frequency = frequency;
    return solve(build_hsf_stack(g, state, model, m, frequency), ex).absorptance;
}

inline Resonance find_resonance(const GrapheneState& state, const UnitCellGeometry& g,
                                const HomogenizationModel& model, const Materials& m, double f_lo, double f_hi,
                                const ResonanceSearch& opts = {}) {
    return find_resonance([&](double f) { return hsf_absorptance(g, state, model, m, f); }, f_lo, f_hi, opts);
}

namespace detail {

struct MatchFactors {
    double kappa;
    double sheet_scale;
};

// kappa and sheet_scale that make Z_in = Z0 exactly at `frequency`.
inline MatchFactors matching_factors(const UnitCellGeometry& g, const GrapheneState& state, const Materials& m,
                                     double frequency) {
    Excitation ex;
    ex.frequency = frequency;
    const double z0 = C::Z0();
    const complex z_sub = z0 * input_impedance(build_substrate_stack(g, m), ex);
    const complex z_req = 1.0 / (1.0 / z0 - 1.0 / z_sub);
    const complex graphene = patch_graphene_term(g, sigma_intraband(frequency, state));
    const double scale = z_req.real() / graphene.real();
    const double cap = grid_capacitance(g, grid_permittivity(1.0, m.eps_sio2));
    const double kappa = 1.0 / (angular(frequency) * cap * (scale * graphene.imag() - z_req.imag()));
    return {kappa, scale};
}

inline bool factors_in_range(const MatchFactors& f) {
    auto ok = [](double v) {
        return std::isfinite(v) && v >= HomogenizationModel::min_factor && v <= HomogenizationModel::max_factor;
    };
    return ok(f.kappa) && ok(f.sheet_scale);
}

}  // namespace detail

struct CalibrationBand {
    double f_lo = 1.0e12;
    double f_hi = 4.0e12;
};

/// Fits kappa and sheet_scale so the stack at `state` is perfectly matched at
/// `target_f`, then confirms with `find_resonance` over `band` that the
/// global absorption peak sits at the target within 0.1%.
///
/// Both factors must land in [0.1, 10]; otherwise CalibrationError reports the
/// sub-range of `band` for which they would.
inline HomogenizationModel calibrate(const UnitCellGeometry& g, const GrapheneState& state, const Materials& m,
                                     double target_f, const CalibrationBand& band = {}) {
    g.validate();
    m.validate();
    state.validate();
    detail::require_positive(target_f, "target frequency");
    detail::require(band.f_lo < band.f_hi, "calibration band is empty");

    auto achievable = [&] {
        double lo = std::numeric_limits<double>::quiet_NaN(), hi = lo;
        for (double f : linspace(band.f_lo, band.f_hi, 601)) {
            if (detail::factors_in_range(detail::matching_factors(g, state, m, f))) {
                if (std::isnan(lo)) lo = f;
                hi = f;
            }
        }
        return std::pair{lo, hi};
    };
    auto fail = [&](const std::string& why) {
        const auto [lo, hi] = achievable();
        throw CalibrationError("calibration failed: " + why, lo, hi);
    };

    if (!(target_f > band.f_lo && target_f < band.f_hi)) fail("target outside the search band");
    const detail::MatchFactors fit = detail::matching_factors(g, state, m, target_f);
    if (!detail::factors_in_range(fit)) fail("matching factors outside [0.1, 10]");

    HomogenizationModel model{fit.kappa, fit.sheet_scale, true};
    const Resonance res = find_resonance(state, g, model, m, band.f_lo, band.f_hi);
    if (std::abs(res.frequency - target_f) > 1e-3 * target_f) fail("absorption peak does not land on the target");
    return model;
}

}  // namespace hsf
