// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <gtest/gtest.h>

#include "hsf/supercell.hpp"

namespace {

using namespace hsf;

constexpr double kLambda = 120e-6;
constexpr double kPitch = 8.5e-6;

SupercellSpec spec(double theta_i, std::int64_t cells) { return {theta_i, cells, kPitch, kLambda, 1.0}; }

TEST(Reflection, ReferenceDesignPoints) {
    int within = 0;
    for (const auto& row : table2_rows()) {
        const ReflectionOutcome o = reflection_angle(spec(row.theta_i_deg, row.cells));
        if (row.cells == 19 && row.theta_i_deg == 15.0) {
            EXPECT_FALSE(o.propagating());
            EXPECT_NEAR(o.sin_theta_r, 1.002, 0.001);
            EXPECT_TRUE(std::isnan(o.theta_r_deg()));
            continue;
        }
        ASSERT_TRUE(o.propagating()) << row.cells;
        EXPECT_NEAR(o.theta_r_deg(), row.listed_theta_r_deg, 1.0) << row.theta_i_deg << " " << row.cells;
        within += std::abs(o.theta_r_deg() - row.listed_theta_r_deg) <= 1.0;
    }
    EXPECT_EQ(within, 7);
}

TEST(Reflection, ClosedFormValue) {
    const ReflectionOutcome o = reflection_angle(spec(30.0, 38));
    EXPECT_NEAR(o.sin_theta_r, 0.5 + 120.0 / (38 * 8.5), 1e-15);
    EXPECT_NEAR(o.theta_r_deg(), 60.64, 0.01);
}

TEST(Reflection, LongSupercellApproachesSpecular) {
    for (double ti : {0.0, 15.0, 30.0, 60.0}) {
        const ReflectionOutcome o = reflection_angle(spec(ti, 1'000'000'000));
        EXPECT_NEAR(o.theta_r_deg(), ti, 1e-3);
    }
}

TEST(Reflection, AngleFallsAsSupercellGrows) {
    double prev = 90.0;
    for (std::int64_t n = 20; n <= 200; ++n) {
        const double t = reflection_angle(spec(15.0, n)).theta_r_deg();
        EXPECT_LT(t, prev);
        prev = t;
    }
}

TEST(Reflection, DenserIncidenceMediumShrinksShift) {
    SupercellSpec s = spec(0.0, 50);
    const double vac = reflection_angle(s).sin_theta_r;
    s.n_i = 2.0;
    EXPECT_NEAR(reflection_angle(s).sin_theta_r, vac / 2.0, 1e-15);
}

TEST(Reflection, RejectsInvalidSpec) {
    EXPECT_THROW(reflection_angle(spec(15.0, 1)), InvalidArgument);
    EXPECT_THROW(reflection_angle(spec(90.0, 10)), InvalidArgument);
    EXPECT_THROW(reflection_angle(spec(-1.0, 10)), InvalidArgument);
    SupercellSpec s = spec(15.0, 10);
    s.wavelength = 0.0;
    EXPECT_THROW(reflection_angle(s), InvalidArgument);
}

TEST(Design, TruncatesToWholeCells) {
    const SupercellDesign a = design_supercell(15.0, 45.0, kLambda, kPitch);
    EXPECT_EQ(a.spec.cells, 31);
    EXPECT_GE(a.achieved.theta_r_deg(), 45.0);

    const SupercellDesign b = design_supercell(30.0, 60.0, kLambda, kPitch);
    EXPECT_EQ(b.spec.cells, 38);
    EXPECT_NEAR(b.achieved.theta_r_deg(), 60.6, 0.1);
}

TEST(Design, ReproducesReferenceCellCounts) {
    for (const auto& row : table2_rows()) {
        if (row.cells == 19) continue;  // listed point is evanescent
        EXPECT_EQ(design_supercell(row.theta_i_deg, row.listed_theta_r_deg, kLambda, kPitch).spec.cells, row.cells)
            << row.theta_i_deg << " " << row.listed_theta_r_deg;
    }
}

TEST(Design, StepsPastEvanescentOrder) {
    const SupercellDesign d = design_supercell(15.0, 75.0, kLambda, kPitch);
    EXPECT_TRUE(d.achieved.propagating());
    EXPECT_EQ(d.spec.cells, 20);
    EXPECT_FALSE(reflection_angle(spec(15.0, 19)).propagating());
}

TEST(Design, TargetBelowSpecularIsRejected) {
    try {
        design_supercell(30.0, 20.0, kLambda, kPitch);
        FAIL() << "expected InvalidArgument";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("below specular"), std::string::npos);
    }
    EXPECT_THROW(design_supercell(30.0, 30.0, kLambda, kPitch), InvalidArgument);
    EXPECT_THROW(design_supercell(30.0, 90.0, kLambda, kPitch), InvalidArgument);
}

TEST(PhaseProfile, LinearRampOverOneTurn) {
    const PhaseProfile p = phase_profile(spec(15.0, 8));
    ASSERT_EQ(p.phases.size(), 8u);
    EXPECT_NEAR(p.gradient, 2.0 * pi / (8 * kPitch), 1e-6);
    for (std::size_t k = 0; k < p.phases.size(); ++k) {
        EXPECT_NEAR(p.phases[k], 2.0 * pi * k / 8.0, 1e-15);
        EXPECT_GE(p.phases[k], 0.0);
        EXPECT_LT(p.phases[k], 2.0 * pi);
    }
    // Gradient form of the reflection law.
    const double k0 = 2.0 * pi / kLambda;
    EXPECT_NEAR(std::sin(deg2rad(15.0)) + p.gradient / k0, reflection_angle(spec(15.0, 8)).sin_theta_r, 1e-12);
}

}  // namespace
