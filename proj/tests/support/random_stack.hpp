// SPDX-License-Identifier: Apache-2.0
// Randomized passive stacks shared by the property tests and the acceptance run.
#pragma once

#include <random>

#include "hsf/multilayer.hpp"

namespace hsf::fixtures {

struct RandomStackOptions {
    int max_elements = 6;
    double max_thickness = 30e-6;
    double max_loss_tangent = 0.5;
    bool allow_sheets = true;
    bool allow_pec = true;
    bool lossless = false;
};

inline LayerStack random_stack(std::mt19937_64& rng, const RandomStackOptions& o = {}) {
    std::uniform_int_distribution<int> count(0, o.max_elements);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto medium = [&](double max_re) {
        const double re = 1.0 + (max_re - 1.0) * unit(rng);
        const double loss = o.lossless ? 0.0 : o.max_loss_tangent * unit(rng);
        return complex(re, -loss * re);
    };

    LayerStack s;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        if (o.allow_sheets && unit(rng) < 0.25) {
            const double g = 1.0 / C::Z0();
            const double re = o.lossless ? 0.0 : 5.0 * g * unit(rng);
            s.elements.push_back(SheetBoundary{{re, 10.0 * g * (2.0 * unit(rng) - 1.0)}});
        } else {
            s.elements.push_back(Layer{o.max_thickness * unit(rng), medium(12.0), medium(3.0)});
        }
    }
    if (o.allow_pec && unit(rng) < 0.3)
        s.termination = PecTermination{};
    else
        s.termination = HalfSpace{medium(12.0), complex(1.0, 0.0)};
    return s;
}

inline Excitation random_excitation(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> f(0.1e12, 10e12), th(0.0, 85.0), unit(0.0, 1.0);
    Excitation ex;
    ex.frequency = f(rng);
    ex.theta_deg = th(rng);
    ex.polarization = unit(rng) < 0.5 ? Polarization::TE : Polarization::TM;
    return ex;
}

}  // namespace hsf::fixtures
