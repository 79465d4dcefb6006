// SPDX-License-Identifier: Apache-2.0
//
// Graphene sheet conductivity (Kubo and intraband closed form), gate bias
// field and the equivalent bulk permittivity. All quantities use the
// exp(+j*omega*t) time convention: a passive sheet has Re(sigma) >= 0 and an
// inductive sheet has Im(sigma) < 0.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "hsf/constants.hpp"
#include "hsf/error.hpp"
#include "hsf/quadrature.hpp"

namespace hsf {

enum class TimeConvention { exp_plus_jwt };

/// Electronic state of a graphene monolayer. The chemical potential is held
/// in joules; use `from_ev` at interfaces that speak electron-volts.
struct GrapheneState {
    double mu_c = 0.5 * C::eV;  // J
    double tau = 1e-12;         // s
    double temperature = 300.0; // K
    double t_g = 0.335e-9;      // m, monolayer thickness
    double v_f = 1.0e6;         // m/s

    static GrapheneState from_ev(double mu_c_ev, double tau = 1e-12, double temperature = 300.0,
                                 double t_g = 0.335e-9, double v_f = 1.0e6) {
        GrapheneState s{mu_c_ev * C::eV, tau, temperature, t_g, v_f};
        s.validate();
        return s;
    }

    double mu_c_ev() const { return mu_c / C::eV; }

    void validate() const {
        detail::require_finite(mu_c, "mu_c");
        detail::require(mu_c >= 0.0, "mu_c must be non-negative");
        detail::require_positive(tau, "tau");
        detail::require_positive(temperature, "temperature");
        detail::require_positive(t_g, "t_g");
        detail::require_positive(v_f, "v_f");
    }
};

struct SheetConductivity {
    complex value;            // S (per square)
    double frequency = 0.0;   // Hz
    double error_estimate = 0.0;  // absolute, quadrature routes only
    static constexpr TimeConvention convention = TimeConvention::exp_plus_jwt;
};

/// Fermi-Dirac occupancy, evaluated without overflow for |E - mu| >> k_B T.
inline double fermi_dirac(double energy, double mu_c, double temperature) {
    detail::require_finite(energy, "energy");
    detail::require_finite(mu_c, "mu_c");
    detail::require_positive(temperature, "temperature");
    const double x = (energy - mu_c) / (C::k_B * temperature);
    if (x > 0.0) {
        const double em = std::exp(-x);
        return em / (1.0 + em);
    }
    return 1.0 / (1.0 + std::exp(x));
}

/// d f / d E evaluated at `energy`.
inline double fermi_dirac_derivative(double energy, double mu_c, double temperature) {
    const double kt = C::k_B * temperature;
    const double x = std::abs(energy - mu_c) / kt;
    const double em = std::exp(-x);
    return -em / ((1.0 + em) * (1.0 + em) * kt);
}

namespace detail {

inline void require_frequency(double frequency) { require_positive(frequency, "frequency"); }

// omega - j/tau
inline complex damped_omega(double frequency, double tau) {
    return {angular(frequency), -1.0 / tau};
}

}  // namespace detail

/// Intraband (Drude-like) closed form of the Kubo conductivity.
inline SheetConductivity sigma_intraband(double frequency, const GrapheneState& state) {
    detail::require_frequency(frequency);
    state.validate();
    const double kt = C::k_B * state.temperature;
    const double ratio = state.mu_c / kt;
    const double bracket = ratio + 2.0 * std::log1p(std::exp(-ratio));
    const complex w = detail::damped_omega(frequency, state.tau);
    const complex sigma = -j * C::e * C::e * kt / (pi * C::hbar * C::hbar * w) * bracket;
    return {sigma, frequency, 0.0};
}

/// Upper energy limit for the Fermi-factor integrals.
inline double kubo_energy_cutoff(double frequency, const GrapheneState& state) {
    const double kt = C::k_B * state.temperature;
    return state.mu_c + std::max(40.0 * kt, 10.0 * C::hbar * angular(frequency));
}

/// Full Kubo conductivity: intraband and interband integrals by adaptive
/// quadrature on [0, E_max]. Beyond E_max the interband numerator
/// f(-E) - f(E) equals one to double precision, so that tail is integrated
/// in closed form rather than truncated.
inline SheetConductivity sigma_full_kubo(double frequency, const GrapheneState& state,
                                         const QuadratureSpec& quad = {}) {
    detail::require_frequency(frequency);
    state.validate();
    detail::require(quad.rel_tol > 0.0, "quadrature tolerance must be positive");

    const double mu = state.mu_c;
    const double temp = state.temperature;
    const double hbar = C::hbar;
    const complex w = detail::damped_omega(frequency, state.tau);
    const complex w2 = w * w;
    const double e_max = kubo_energy_cutoff(frequency, state);
    const double e_pole = 0.5 * hbar * angular(frequency);

    // eps * (df(eps)/d eps - d f(-eps)/d eps) = eps * (f'(eps) + f'(-eps))
    auto intra = [&](double eps) {
        return eps * (fermi_dirac_derivative(eps, mu, temp) + fermi_dirac_derivative(-eps, mu, temp));
    };
    auto inter = [&](double eps) {
        const double occ = fermi_dirac(-eps, mu, temp) - fermi_dirac(eps, mu, temp);
        return complex(occ) / (w2 - 4.0 * (eps / hbar) * (eps / hbar));
    };

    // The interband denominator is a Lorentzian of width hbar/tau centred on
    // e_pole; bracket it so the panels resolve its real part.
    const double kt = C::k_B * temp;
    const double gam = hbar / state.tau;
    std::vector<double> intra_pts{0.0, std::min(mu, e_max), e_max};
    std::vector<double> inter_pts{0.0, std::min(mu, e_max), e_max};
    for (double k : {-5.0, -1.0, 1.0, 5.0}) inter_pts.push_back(mu + k * kt);
    for (double k : {-200.0, -50.0, -5.0, -1.0, 0.0, 1.0, 5.0, 50.0, 200.0}) inter_pts.push_back(e_pole + k * gam);
    std::erase_if(inter_pts, [&](double x) { return x < 0.0 || x > e_max; });

    const QuadratureResult ri = integrate(intra, intra_pts, quad);
    const QuadratureResult rb = integrate(inter, inter_pts, quad);

    const complex a = 0.5 * hbar * w;
    const complex tail = -(hbar * hbar / 4.0) / (2.0 * a) * std::log((e_max + a) / (e_max - a));

    const complex pref = j * C::e * C::e * w / (pi * hbar * hbar);
    const complex sigma = pref * (ri.value / w2 - (rb.value + tail));
    const double err = std::abs(pref) * (ri.error / std::abs(w2) + rb.error);
    return {sigma, frequency, err};
}

/// Gate field needed to set the chemical potential `mu_c` (J).
inline double bias_field(double mu_c, double temperature, double v_f, const QuadratureSpec& quad = {}) {
    detail::require_finite(mu_c, "mu_c");
    detail::require(mu_c >= 0.0, "mu_c must be non-negative");
    detail::require_positive(temperature, "temperature");
    detail::require_positive(v_f, "v_f");
    if (mu_c == 0.0) return 0.0;

    const double kt = C::k_B * temperature;
    auto integrand = [&](double eps) {
        return eps * (fermi_dirac(eps, mu_c, temperature) - fermi_dirac(eps + 2.0 * mu_c, mu_c, temperature));
    };
    std::array<double, 5> pts{0.0, std::max(0.0, mu_c - 10.0 * kt), mu_c, mu_c + 10.0 * kt,
                              mu_c + 60.0 * kt};
    const QuadratureResult r = integrate(integrand, pts, quad);
    return C::e / (pi * C::eps0 * C::hbar * C::hbar * v_f * v_f) * r.value.real();
}

/// Zero-temperature limit of `bias_field`.
inline double bias_field_t0(double mu_c, double v_f) {
    return C::e * mu_c * mu_c / (2.0 * pi * C::eps0 * C::hbar * C::hbar * v_f * v_f);
}

/// Bulk relative permittivity of a sheet of thickness `t_g`.
inline complex graphene_permittivity(const SheetConductivity& sigma, double t_g) {
    detail::require_positive(t_g, "t_g");
    detail::require_frequency(sigma.frequency);
    return 1.0 + sigma.value / (j * angular(sigma.frequency) * C::eps0 * t_g);
}

/// Inverse of `graphene_permittivity`.
inline SheetConductivity conductivity_from_permittivity(complex eps, double frequency, double t_g) {
    detail::require_positive(t_g, "t_g");
    detail::require_frequency(frequency);
    return {(eps - 1.0) * j * angular(frequency) * C::eps0 * t_g, frequency, 0.0};
}

}  // namespace hsf
