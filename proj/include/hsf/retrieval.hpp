// SPDX-License-Identifier: Apache-2.0
//
// Effective-medium retrieval (n, z, eps, mu) from two-port S-parameters of a
// homogeneous slab of thickness L, exp(+j w t) convention:
//
//   z = sqrt(((1 + S11)^2 - S21^2) / ((1 - S11)^2 - S21^2)),  Re z >= 0
//   exp(-j n k0 L) = S21 / (1 - S11 (z - 1) / (z + 1))
//   n = (j ln(...) + 2 pi m) / (k0 L)
//
// The integer m selects the branch of the logarithm.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "hsf/constants.hpp"
#include "hsf/error.hpp"
#include "hsf/multilayer.hpp"

namespace hsf {

struct TwoPortSample {
    double frequency = 0.0;
    complex s11;
    complex s21;
    double slab_thickness = 0.0;
};

struct RetrievedParams {
    double frequency = 0.0;
    complex n;
    complex z;
    complex eps_eff;
    complex mu_eff;
    int branch_index = 0;
    bool flagged = false;  // branch continuity could not be established
};

namespace detail {

struct RetrievalCore {
    complex z;
    complex log_term;  // j * ln(S21 / (1 - S11 R01))
    double k0L;
};

inline RetrievalCore retrieval_core(const TwoPortSample& s) {
    require_positive(s.frequency, "frequency");
    require_positive(s.slab_thickness, "slab thickness");
    constexpr double passive_tol = 1e-9;
    require(std::norm(s.s11) + std::norm(s.s21) <= 1.0 + passive_tol,
            "|S11|^2 + |S21|^2 exceeds one (non-passive sample)");
    if (std::abs(s.s21) < 1e-12) throw RetrievalError("opaque slab: |S21| < 1e-12, two-port retrieval undefined");

    const complex num = (1.0 + s.s11) * (1.0 + s.s11) - s.s21 * s.s21;
    const complex den = (1.0 - s.s11) * (1.0 - s.s11) - s.s21 * s.s21;
    if (std::abs(den) < 1e-14) throw RetrievalError("degenerate sample: impedance denominator vanishes");

    const double k0L = wavenumber(s.frequency) * s.slab_thickness;
    auto log_for = [&](complex z) {
        const complex r01 = (z - 1.0) / (z + 1.0);
        return j * std::log(s.s21 / (1.0 - s.s11 * r01));
    };

    complex z = std::sqrt(num / den);
    if (z.real() < 0.0) z = -z;
    complex lt = log_for(z);
    // For near-lossless slabs Re z ~ 0 does not fix the sign; take the root that
    // gives a decaying wave (Im n <= 0).
    if (std::abs(z.real()) < 1e-9 * std::abs(z)) {
        const complex lt_alt = log_for(-z);
        if (lt_alt.imag() <= 0.0 && lt.imag() > 0.0) {
            z = -z;
            lt = lt_alt;
        }
    }
    return {z, lt, k0L};
}

inline RetrievedParams assemble(const TwoPortSample& s, const RetrievalCore& core, int branch) {
    RetrievedParams p;
    p.frequency = s.frequency;
    p.z = core.z;
    p.n = (core.log_term + 2.0 * pi * static_cast<double>(branch)) / core.k0L;
    p.eps_eff = p.n / p.z;
    p.mu_eff = p.n * p.z;
    p.branch_index = branch;
    return p;
}

}  // namespace detail

inline RetrievedParams retrieve(const TwoPortSample& sample, int branch_index = 0) {
    return detail::assemble(sample, detail::retrieval_core(sample), branch_index);
}

/// Retrieval along a frequency-ordered sweep. The branch at the first point
/// minimizes |n|; later points take the branch closest to the previous n.
/// A point is flagged when even the best branch moves the phase n k0 L by more
/// than pi/2 from its neighbour.
inline std::vector<RetrievedParams> retrieve_dispersion(const std::vector<TwoPortSample>& samples) {
    std::vector<RetrievedParams> out;
    out.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (i > 0) detail::require(s.frequency > samples[i - 1].frequency, "samples must be sorted by frequency");
        const auto core = detail::retrieval_core(s);

        // Branch offsets are real, so the candidate closest to a reference
        // value is found by rounding.
        auto nearest_branch = [&](double target_re_n) {
            return static_cast<int>(std::lround((target_re_n * core.k0L - core.log_term.real()) / (2.0 * pi)));
        };

        if (out.empty()) {
            out.push_back(detail::assemble(s, core, nearest_branch(0.0)));
            continue;
        }
        const RetrievedParams& prev = out.back();
        RetrievedParams p = detail::assemble(s, core, nearest_branch(prev.n.real()));
        const double prev_k0L = wavenumber(prev.frequency) * samples[i - 1].slab_thickness;
        const double dphase = std::abs((p.n * core.k0L - prev.n * prev_k0L).real());
        p.flagged = dphase > pi / 2.0;
        out.push_back(p);
    }
    return out;
}

/// Two-port response of a stack embedded in vacuum, referenced to its outer faces.
inline TwoPortSample two_port(const LayerStack& slab, double frequency, double thickness) {
    detail::require(!slab.pec_backed(), "two-port sample needs an open (non-PEC) termination");
    Excitation ex;
    ex.frequency = frequency;
    const SpectralPoint p = solve(slab, ex);
    return {frequency, p.r, p.t, thickness};
}

/// Total thickness of the layers in a stack.
inline double stack_thickness(const LayerStack& s) {
    double t = 0.0;
    for (const auto& e : s.elements)
        if (const auto* l = std::get_if<Layer>(&e)) t += l->thickness;
    return t;
}

}  // namespace hsf
