// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hsf/graphene.hpp"
#include "hsf/multilayer.hpp"
#include "support/random_stack.hpp"

namespace {

using namespace hsf;

Excitation at(double f, double theta = 0.0, Polarization p = Polarization::TE) {
    Excitation ex;
    ex.frequency = f;
    ex.theta_deg = theta;
    ex.polarization = p;
    return ex;
}

TEST(Solver, EmptyStackIsFreeSpace) {
    const auto p = solve(LayerStack{}, at(1e12, 30.0));
    EXPECT_EQ(p.r, complex(0.0, 0.0));
    EXPECT_NEAR(std::abs(p.t - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(p.transmittance, 1.0, 1e-15);
    EXPECT_NEAR(p.absorptance, 0.0, 1e-15);
}

TEST(Solver, VacuumLayerOnlyShiftsPhase) {
    const double f = 1e12, d = 37e-6;
    LayerStack s;
    s.elements = {Layer{d}};
    const auto p = solve(s, at(f));
    EXPECT_NEAR(std::abs(p.r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.t - std::exp(-j * wavenumber(f) * d)), 0.0, 1e-14);
}

TEST(Solver, BarePecReflectsWithMinusOne) {
    LayerStack s;
    s.termination = PecTermination{};
    for (auto pol : {Polarization::TE, Polarization::TM}) {
        const auto p = solve(s, at(2e12, 40.0, pol));
        EXPECT_NEAR(std::abs(p.r + 1.0), 0.0, 1e-15);
        EXPECT_EQ(p.t, complex(0.0, 0.0));
        EXPECT_EQ(p.transmittance, 0.0);
        EXPECT_NEAR(p.absorptance, 0.0, 1e-15);
    }
}

TEST(Solver, PecBackedTransmissionIsExactlyZero) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        LayerStack s = fixtures::random_stack(rng);
        s.termination = PecTermination{};
        const auto p = solve(s, fixtures::random_excitation(rng));
        EXPECT_EQ(p.t, complex(0.0, 0.0));
        EXPECT_EQ(p.transmittance, 0.0);
    }
}

TEST(Solver, HalfSpaceFresnel) {
    const double n2 = 3.42;
    LayerStack s;
    s.termination = HalfSpace{n2 * n2};
    const auto p = solve(s, at(1e12));
    EXPECT_NEAR(p.r.real(), (1.0 - n2) / (1.0 + n2), 1e-15);
    EXPECT_NEAR(p.r.imag(), 0.0, 1e-15);
    EXPECT_NEAR(p.reflectance + p.transmittance, 1.0, 1e-14);

    // Brewster angle: TM reflection vanishes.
    const auto b = solve(s, at(1e12, rad2deg(std::atan(n2)), Polarization::TM));
    EXPECT_NEAR(std::abs(b.r), 0.0, 1e-14);
}

TEST(Solver, QuarterWaveCoatingIsReflectionless) {
    const double n_sub = 3.42, n_c = std::sqrt(n_sub), f = 1e12;
    const double lambda = C::c0 / f;
    LayerStack s;
    s.elements = {Layer{lambda / (4.0 * n_c), n_c * n_c}};
    s.termination = HalfSpace{n_sub * n_sub};
    EXPECT_NEAR(solve(s, at(f)).reflectance, 0.0, 1e-28);
}

TEST(Solver, SalisburyScreenAbsorbsFully) {
    const double f = 2.5e12;
    LayerStack s;
    s.elements = {SheetBoundary{1.0 / C::Z0()}, Layer{C::c0 / f / 4.0}};
    s.termination = PecTermination{};
    const auto p = solve(s, at(f));
    EXPECT_NEAR(p.absorptance, 1.0, 1e-9);
    EXPECT_NEAR(std::abs(p.r), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(p.zin_norm - 1.0), 0.0, 1e-9);
    // Off design the gap is no longer an open circuit.
    EXPECT_LT(solve(s, at(0.7 * f)).absorptance, 0.95);
}

TEST(Solver, EnergyBalanceOnRandomPassiveStacks) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 2000; ++i) {
        const LayerStack s = fixtures::random_stack(rng);
        const Excitation ex = fixtures::random_excitation(rng);
        const auto p = solve(s, ex);
        EXPECT_NEAR(p.reflectance + p.transmittance + p.absorptance, 1.0, 1e-12) << i;
        EXPECT_GE(p.absorptance, -1e-12) << i;
    }
}

TEST(Solver, LosslessStacksDoNotAbsorb) {
    std::mt19937_64 rng(99);
    fixtures::RandomStackOptions o;
    o.lossless = true;
    for (int i = 0; i < 1000; ++i) {
        const LayerStack s = fixtures::random_stack(rng, o);
        EXPECT_NEAR(solve(s, fixtures::random_excitation(rng)).absorptance, 0.0, 1e-12) << i;
    }
}

TEST(Solver, NormalIncidencePolarizationsAgree) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const LayerStack s = fixtures::random_stack(rng);
        Excitation ex = fixtures::random_excitation(rng);
        ex.theta_deg = 0.0;
        ex.polarization = Polarization::TE;
        const auto te = solve(s, ex);
        ex.polarization = Polarization::TM;
        const auto tm = solve(s, ex);
        EXPECT_LT(std::abs(te.r - tm.r), 1e-12);
        EXPECT_LT(std::abs(te.t - tm.t), 1e-12);
    }
}

TEST(Solver, DualStackSwapsPolarizationAndFlipsReflection) {
    std::mt19937_64 rng(23);
    fixtures::RandomStackOptions o;
    o.allow_sheets = false;
    o.allow_pec = false;
    for (int i = 0; i < 500; ++i) {
        LayerStack s = fixtures::random_stack(rng, o);
        s.termination = HalfSpace{};
        LayerStack dual = s;
        for (auto& e : dual.elements) {
            auto& l = std::get<Layer>(e);
            std::swap(l.permittivity, l.permeability);
        }
        Excitation ex = fixtures::random_excitation(rng);
        ex.polarization = Polarization::TE;
        const auto te = solve(s, ex);
        ex.polarization = Polarization::TM;
        const auto tm = solve(dual, ex);
        EXPECT_LT(std::abs(te.r + tm.r), 1e-12) << i;
        EXPECT_NEAR(te.absorptance, tm.absorptance, 1e-12) << i;
    }
}

TEST(Solver, ReciprocalTransmission) {
    std::mt19937_64 rng(31);
    fixtures::RandomStackOptions o;
    o.allow_pec = false;
    for (int i = 0; i < 500; ++i) {
        LayerStack s = fixtures::random_stack(rng, o);
        s.termination = HalfSpace{};
        const Excitation ex = fixtures::random_excitation(rng);
        const auto fwd = solve(s, ex);
        const auto back = solve(reversed(s), ex);
        EXPECT_LT(std::abs(fwd.t - back.t), 1e-12 * std::max(1.0, std::abs(fwd.t))) << i;
    }
}

TEST(Solver, SheetMatchesThinGrapheneSlab) {
    const auto st = GrapheneState::from_ev(0.5, 1e-12, 300.0);
    for (double f : {1e12, 2.5e12, 4e12}) {
        const SheetConductivity sigma = sigma_intraband(f, st);
        LayerStack sheet;
        sheet.elements = {SheetBoundary{sigma.value}};
        sheet.termination = HalfSpace{3.9};
        LayerStack slab;
        slab.elements = {Layer{st.t_g, graphene_permittivity(sigma, st.t_g)}};
        slab.termination = HalfSpace{3.9};
        const auto a = solve(sheet, at(f)), b = solve(slab, at(f));
        EXPECT_LT(std::abs(a.r - b.r) / std::abs(a.r), 0.01) << f;
        EXPECT_NEAR(a.absorptance, b.absorptance, 0.01 * a.absorptance) << f;
    }
}

TEST(Solver, InputImpedanceOfShortedLine) {
    const double f = 1e12, d = 20e-6;
    LayerStack s;
    s.elements = {Layer{d}};
    s.termination = PecTermination{};
    const complex z = input_impedance(s, at(f));
    EXPECT_NEAR(z.real(), 0.0, 1e-15);
    EXPECT_NEAR(z.imag(), std::tan(wavenumber(f) * d), 1e-12);
}

TEST(Solver, RejectsActiveOrMalformedInput) {
    LayerStack gain;
    gain.elements = {Layer{1e-6, complex(4.0, 0.1)}};
    EXPECT_THROW(solve(gain, at(1e12)), InvalidArgument);
    LayerStack neg;
    neg.elements = {Layer{-1e-6}};
    EXPECT_THROW(solve(neg, at(1e12)), InvalidArgument);
    LayerStack active_sheet;
    active_sheet.elements = {SheetBoundary{{-1e-3, 0.0}}};
    EXPECT_THROW(solve(active_sheet, at(1e12)), InvalidArgument);
    EXPECT_THROW(solve(LayerStack{}, at(1e12, 90.0)), InvalidArgument);
    EXPECT_THROW(solve(LayerStack{}, at(0.0)), InvalidArgument);
    LayerStack pec;
    pec.termination = PecTermination{};
    EXPECT_THROW(reversed(pec), InvalidArgument);
}

TEST(Spectrum, GridAndRefinement) {
    const double f0 = 2.5e12;
    StackBuilder b = [&](double) {
        LayerStack s;
        s.elements = {SheetBoundary{1.0 / C::Z0()}, Layer{C::c0 / f0 / 4.0}};
        s.termination = PecTermination{};
        return s;
    };
    const auto coarse = spectrum(b, 1e12, 4e12, 101, {});
    const auto fine = spectrum(b, 1e12, 4e12, 201, {});
    ASSERT_EQ(coarse.size(), 101u);
    ASSERT_EQ(fine.size(), 201u);
    EXPECT_EQ(coarse.front().frequency, 1e12);
    EXPECT_EQ(coarse.back().frequency, 4e12);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        EXPECT_NEAR(coarse[i].frequency, fine[2 * i].frequency, 1e-3);
        EXPECT_NEAR(coarse[i].absorptance, fine[2 * i].absorptance, 1e-12);
    }
}

TEST(Spectrum, ErrorsNameTheFrequency) {
    StackBuilder b = [](double f) {
        LayerStack s;
        s.elements = {Layer{1e-6, f > 2e12 ? complex(2.0, 1.0) : complex(2.0, 0.0)}};
        return s;
    };
    try {
        spectrum(b, 1e12, 3e12, 5, {});
        FAIL() << "expected SweepError";
    } catch (const SweepError& e) {
        EXPECT_DOUBLE_EQ(e.frequency(), 2.5e12);
    }
    EXPECT_THROW(spectrum(b, 2e12, 1e12, 5, {}), InvalidArgument);
    EXPECT_THROW(spectrum(b, 1e12, 2e12, 1, {}), InvalidArgument);
}

}  // namespace
