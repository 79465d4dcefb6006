// SPDX-License-Identifier: Apache-2.0
//
// Phase-gradient supercells and the generalized law of reflection
//
//   sin(theta_r) = sin(theta_i) + lambda / (n_i * D),   D = N_c * d
//
// for a linear 2 pi phase ramp across the supercell.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "hsf/constants.hpp"
#include "hsf/error.hpp"

namespace hsf {

struct SupercellSpec {
    double theta_i_deg = 0.0;
    std::int64_t cells = 2;       // N_c
    double pitch = 8.5e-6;        // d, m
    double wavelength = 120e-6;   // m
    double n_i = 1.0;

    double length() const { return static_cast<double>(cells) * pitch; }

    void validate() const {
        detail::require(std::isfinite(theta_i_deg) && theta_i_deg >= 0.0 && theta_i_deg < 90.0,
                        "incidence angle must be in [0, 90) degrees");
        detail::require(cells >= 2, "a supercell needs at least two cells");
        detail::require_positive(pitch, "cell pitch");
        detail::require_positive(wavelength, "wavelength");
        detail::require_positive(n_i, "incidence refractive index");
    }
};

struct ReflectionOutcome {
    double sin_theta_r = 0.0;

    bool propagating() const { return std::abs(sin_theta_r) <= 1.0; }
    /// Reflection angle in degrees; NaN for an evanescent order.
    double theta_r_deg() const {
        return propagating() ? rad2deg(std::asin(sin_theta_r)) : std::numeric_limits<double>::quiet_NaN();
    }
};

struct PhaseProfile {
    std::vector<double> phases;  // rad, wrapped to [0, 2 pi)
    double gradient = 0.0;       // rad/m
};

inline ReflectionOutcome reflection_angle(const SupercellSpec& spec) {
    spec.validate();
    return {std::sin(deg2rad(spec.theta_i_deg)) + spec.wavelength / (spec.n_i * spec.length())};
}

struct SupercellDesign {
    SupercellSpec spec;
    ReflectionOutcome achieved;
};

/// Integer cell count for a target reflection angle: the ideal supercell
/// length truncated to whole cells (so the achieved angle is not below the
/// target), then N_c is stepped upward while the order is still evanescent.
inline SupercellDesign design_supercell(double theta_i_deg, double theta_r_target_deg, double wavelength,
                                        double pitch, double n_i = 1.0) {
    detail::require(std::isfinite(theta_r_target_deg) && theta_r_target_deg < 90.0,
                    "target reflection angle must be below 90 degrees");
    detail::require(theta_r_target_deg > theta_i_deg,
                    "target below specular: a positive phase gradient cannot reduce the reflection angle");
    SupercellSpec spec{theta_i_deg, 2, pitch, wavelength, n_i};
    spec.validate();

    const double dsin = std::sin(deg2rad(theta_r_target_deg)) - std::sin(deg2rad(theta_i_deg));
    const double ideal = wavelength / (n_i * dsin);
    const double cells = std::floor(ideal / pitch + 1e-9);
    detail::require(cells < 9.0e18, "target too close to specular: supercell length overflows");
    spec.cells = std::max<std::int64_t>(2, static_cast<std::int64_t>(cells));
    ReflectionOutcome out = reflection_angle(spec);
    while (!out.propagating()) {
        ++spec.cells;
        out = reflection_angle(spec);
    }
    return {spec, out};
}

inline PhaseProfile phase_profile(const SupercellSpec& spec) {
    spec.validate();
    PhaseProfile p;
    p.gradient = 2.0 * pi / spec.length();
    p.phases.reserve(static_cast<std::size_t>(spec.cells));
    for (std::int64_t k = 0; k < spec.cells; ++k) {
        const double phi = 2.0 * pi * static_cast<double>(k) / static_cast<double>(spec.cells);
        p.phases.push_back(std::fmod(phi, 2.0 * pi));
    }
    return p;
}

struct Table2Row {
    double theta_i_deg;
    std::int64_t cells;
    double listed_theta_r_deg;
};

/// Reference anomalous-reflection design points: incidence angle, cell count
/// and the expected reflection angle for d = 8.5 um at 2.5 THz.
inline const std::vector<Table2Row>& table2_rows() {
    static const std::vector<Table2Row> rows{
        {15.0, 58, 30.0}, {15.0, 31, 45.0}, {15.0, 23, 60.0}, {15.0, 19, 75.0},
        {30.0, 68, 45.0}, {30.0, 38, 60.0}, {30.0, 32, 70.0}, {30.0, 29, 80.0},
    };
    return rows;
}

}  // namespace hsf
