// SPDX-License-Identifier: Apache-2.0
//
// Plane-wave transfer-matrix solver for stratified media with zero-thickness
// conductive sheets. Each layer is a transmission-line section with the
// polarization-dependent wave impedance; a sheet is a shunt admittance
// (tangential E continuous, tangential H jumps by Y_s * E).
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "hsf/constants.hpp"
#include "hsf/error.hpp"

namespace hsf {

struct Layer {
    double thickness = 0.0;       // m
    complex permittivity{1.0, 0.0};
    complex permeability{1.0, 0.0};
};

struct SheetBoundary {
    complex admittance{0.0, 0.0};  // S
};

struct PecTermination {};

/// Semi-infinite exit medium.
struct HalfSpace {
    complex permittivity{1.0, 0.0};
    complex permeability{1.0, 0.0};
};

using StackElement = std::variant<Layer, SheetBoundary>;
using Termination = std::variant<PecTermination, HalfSpace>;

/// Elements are ordered from the incidence side downward.
struct LayerStack {
    std::vector<StackElement> elements;
    Termination termination = HalfSpace{};

    bool pec_backed() const { return std::holds_alternative<PecTermination>(termination); }

    std::size_t sheet_count() const {
        std::size_t n = 0;
        for (const auto& e : elements) n += std::holds_alternative<SheetBoundary>(e) ? 1 : 0;
        return n;
    }
    std::size_t layer_count() const { return elements.size() - sheet_count(); }

    void validate() const {
        constexpr double tol = 1e-15;
        for (const auto& e : elements) {
            if (const auto* l = std::get_if<Layer>(&e)) {
                detail::require(std::isfinite(l->thickness) && l->thickness >= 0.0,
                                "layer thickness must be finite and non-negative");
                detail::require(l->permittivity.imag() <= tol * std::abs(l->permittivity),
                                "layer permittivity must be passive (Im <= 0)");
                detail::require(l->permeability.imag() <= tol * std::abs(l->permeability),
                                "layer permeability must be passive (Im <= 0)");
            } else {
                const auto& s = std::get<SheetBoundary>(e);
                detail::require(std::isfinite(s.admittance.real()) && std::isfinite(s.admittance.imag()),
                                "sheet admittance must be finite");
                detail::require(s.admittance.real() >= 0.0, "sheet admittance must be passive (Re >= 0)");
            }
        }
    }
};

enum class Polarization { TE, TM };

struct Excitation {
    double frequency = 1e12;   // Hz
    double theta_deg = 0.0;    // from normal
    Polarization polarization = Polarization::TE;
    double incidence_permittivity = 1.0;

    void validate() const {
        detail::require_positive(frequency, "frequency");
        detail::require(std::isfinite(theta_deg) && theta_deg >= 0.0 && theta_deg < 90.0,
                        "incidence angle must be in [0, 90) degrees");
        detail::require_positive(incidence_permittivity, "incidence permittivity");
    }
};

/// Solver output at one frequency. `r` and `t` are ratios of tangential
/// electric field at the entrance and exit planes; `zin_norm` is the input
/// impedance normalized to the incidence-medium wave impedance (Z0 at normal
/// incidence from vacuum).
struct SpectralPoint {
    double frequency = 0.0;
    complex r;
    complex t;
    double reflectance = 0.0;
    double transmittance = 0.0;
    double absorptance = 0.0;
    complex zin_norm;
};

namespace detail {

// Longitudinal wavenumber with Im(kz) <= 0 (decay under exp(+j w t)).
inline complex longitudinal_k(double k0, complex eps, complex mu, double kt) {
    complex kz = std::sqrt(k0 * k0 * eps * mu - kt * kt);
    if (kz.imag() > 0.0 || (kz.imag() == 0.0 && kz.real() < 0.0)) kz = -kz;
    return kz;
}

// Transverse wave impedance of a medium for the given polarization. At normal
// incidence both polarizations use the same expression so results match bit for bit.
inline complex wave_impedance(double k0, complex eps, complex mu, complex kz, Polarization pol, double kt) {
    const double z0 = C::Z0();
    return pol == Polarization::TE || kt == 0.0 ? z0 * mu * k0 / kz : z0 * kz / (k0 * eps);
}

using Mat2 = std::array<complex, 4>;  // row-major ABCD

inline Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

}  // namespace detail

/// Field-level solution: the cascaded ABCD matrix plus the terminal impedances.
struct StackSolution {
    detail::Mat2 abcd{1.0, 0.0, 0.0, 1.0};
    complex z_in_medium;     // incidence-medium wave impedance
    complex z_load;          // exit wave impedance (0 for PEC)
    bool pec = false;
};

inline StackSolution cascade(const LayerStack& stack, const Excitation& ex) {
    ex.validate();
    stack.validate();
    const double k0 = wavenumber(ex.frequency);
    const double n_in = std::sqrt(ex.incidence_permittivity);
    const double kt = k0 * n_in * std::sin(deg2rad(ex.theta_deg));

    StackSolution sol;
    {
        const complex eps{ex.incidence_permittivity, 0.0};
        const complex kz = detail::longitudinal_k(k0, eps, 1.0, kt);
        sol.z_in_medium = detail::wave_impedance(k0, eps, 1.0, kz, ex.polarization, kt);
    }
    for (const auto& e : stack.elements) {
        detail::Mat2 m;
        if (const auto* l = std::get_if<Layer>(&e)) {
            const complex kz = detail::longitudinal_k(k0, l->permittivity, l->permeability, kt);
            const complex zc = detail::wave_impedance(k0, l->permittivity, l->permeability, kz, ex.polarization, kt);
            const complex phi = kz * l->thickness;
            const complex c = std::cos(phi), s = std::sin(phi);
            m = {c, j * zc * s, j * s / zc, c};
        } else {
            m = {1.0, 0.0, std::get<SheetBoundary>(e).admittance, 1.0};
        }
        sol.abcd = detail::mul(sol.abcd, m);
    }
    if (const auto* hs = std::get_if<HalfSpace>(&stack.termination)) {
        const complex kz = detail::longitudinal_k(k0, hs->permittivity, hs->permeability, kt);
        sol.z_load = detail::wave_impedance(k0, hs->permittivity, hs->permeability, kz, ex.polarization, kt);
    } else {
        sol.pec = true;
        sol.z_load = 0.0;
    }
    return sol;
}

/// Reflection, transmission, absorptance and input impedance of `stack`.
///
/// Absorptance is computed from the net Poynting flux entering the stack minus
/// the flux leaving through the exit plane, not as 1 - R - T, so the energy
/// balance is an independent check on the field solution.
inline SpectralPoint solve(const LayerStack& stack, const Excitation& ex) {
    const StackSolution s = cascade(stack, ex);
    const auto& [a, b, c, d] = s.abcd;
    const complex z1 = s.z_in_medium;

    // Load terminal: V_L, I_L with I_L = V_L / Z_L (PEC: V_L = 0, I_L = 1).
    complex v_load, i_load;
    if (s.pec) {
        v_load = 0.0;
        i_load = 1.0;
    } else {
        v_load = 1.0;
        i_load = 1.0 / s.z_load;
    }
    const complex v_in = a * v_load + b * i_load;
    const complex i_in = c * v_load + d * i_load;

    // Incident wave amplitude at the entrance plane.
    const complex v_inc = 0.5 * (v_in + z1 * i_in);
    const complex v_ref = 0.5 * (v_in - z1 * i_in);

    SpectralPoint p;
    p.frequency = ex.frequency;
    p.r = v_ref / v_inc;
    p.t = s.pec ? complex{0.0, 0.0} : v_load / v_inc;
    p.zin_norm = v_in / (z1 * i_in);

    const double p_inc = 0.5 * std::norm(v_inc) * (1.0 / z1).real();
    p.reflectance = std::norm(p.r);
    p.transmittance = s.pec ? 0.0 : 0.5 * std::norm(v_load) * (1.0 / s.z_load).real() / p_inc;
    const double p_top = 0.5 * (v_in * std::conj(i_in)).real();
    const double p_bottom = s.pec ? 0.0 : 0.5 * (v_load * std::conj(i_load)).real();
    p.absorptance = (p_top - p_bottom) / p_inc;
    return p;
}

/// Normalized input impedance at the entrance plane.
inline complex input_impedance(const LayerStack& stack, const Excitation& ex) { return solve(stack, ex).zin_norm; }

/// Stack with element order reversed, for incidence from the exit side.
inline LayerStack reversed(const LayerStack& stack) {
    detail::require(!stack.pec_backed(), "cannot reverse a PEC-backed stack");
    LayerStack out;
    out.elements.assign(stack.elements.rbegin(), stack.elements.rend());
    out.termination = stack.termination;
    return out;
}

/// Builds the stack for a given frequency; lets dispersive sheets be re-evaluated per point.
using StackBuilder = std::function<LayerStack(double frequency)>;

/// Inclusive uniform grid of `n_points` frequencies.
inline std::vector<double> linspace(double lo, double hi, std::size_t n_points) {
    detail::require(n_points >= 2, "need at least two points");
    std::vector<double> out(n_points);
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

inline std::vector<SpectralPoint> spectrum(const StackBuilder& builder, double f_start, double f_stop,
                                           std::size_t n_points, const Excitation& tmpl) {
    detail::require_positive(f_start, "f_start");
    detail::require(std::isfinite(f_stop) && f_start < f_stop, "f_start must be below f_stop");
    detail::require(n_points >= 2, "spectrum needs at least two points");
    std::vector<SpectralPoint> out;
    out.reserve(n_points);
    for (double f : linspace(f_start, f_stop, n_points)) {
        Excitation ex = tmpl;
        ex.frequency = f;
        try {
            out.push_back(solve(builder(f), ex));
        } catch (const Error& e) {
            throw SweepError(std::string(e.what()) + " (at f = " + std::to_string(f) + " Hz)", f);
        }
    }
    return out;
}

}  // namespace hsf
