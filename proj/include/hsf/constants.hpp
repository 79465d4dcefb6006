// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace hsf {

using complex = std::complex<double>;

inline constexpr complex j{0.0, 1.0};

/// CODATA 2018 values. e, k_B, h and c0 are exact by SI definition.
struct PhysicalConstants {
    static constexpr double e = 1.602176634e-19;      // C
    static constexpr double k_B = 1.380649e-23;       // J/K
    static constexpr double h = 6.62607015e-34;       // J s
    static constexpr double hbar = h / (2.0 * std::numbers::pi);
    static constexpr double eps0 = 8.8541878128e-12;  // F/m
    static constexpr double mu0 = 1.25663706212e-6;   // H/m
    static constexpr double c0 = 299792458.0;         // m/s
    static constexpr double eV = e;                   // J per eV

    static double Z0() { return std::sqrt(mu0 / eps0); }
};

using C = PhysicalConstants;

inline constexpr double pi = std::numbers::pi;

inline double angular(double frequency) { return 2.0 * pi * frequency; }
inline double wavenumber(double frequency) { return angular(frequency) / C::c0; }
inline double deg2rad(double deg) { return deg * pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / pi; }

}  // namespace hsf
