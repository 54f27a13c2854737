// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "bodyarray/array_model.hpp"
#include "bodyarray/em_model.hpp"
#include "bodyarray/oracles.hpp"

using namespace bodyarray;

namespace {

constexpr double fc = 2.4868e9;
const double lambda = speed_of_light / fc;

} // namespace

TEST(Planar, BroadsideAllOnes) {
    const auto a = planar_steering(3, 0.5 * lambda, lambda, pi / 2);
    for (int i = 0; i < a.elements.size(); ++i) EXPECT_NEAR(std::abs(a.elements(i) - 1.0), 0.0, 1e-15);
}

TEST(Planar, HalfWavelengthSixtyDegrees) {
    const auto a = planar_steering(1, 0.5 * lambda, lambda, pi / 3);
    for (int m = -1; m <= 1; ++m) EXPECT_NEAR(std::arg(a.elements(m + 1)), m * pi / 2, 1e-12);
}

TEST(Planar, ConjugateSymmetricAndNorm) {
    for (int M : {0, 1, 4, 9}) {
        const auto a = planar_steering(M, 0.37 * lambda, lambda, 1.1);
        EXPECT_NEAR(a.elements.squaredNorm(), 2 * M + 1, 1e-12);
        for (int m = 1; m <= M; ++m) EXPECT_EQ(a.elements(M - m), std::conj(a.elements(M + m)));
    }
}

TEST(Planar, RejectsBadDoa) {
    EXPECT_THROW(planar_steering(2, 0.5 * lambda, lambda, 0.0), invalid_argument);
    EXPECT_THROW(planar_steering(2, 0.5 * lambda, lambda, pi), invalid_argument);
}

TEST(NearField, CentralElement) {
    for (double g : {0.3, 1.2, 2.5}) {
        const auto a = nearfield_steering(2, 0.5 * lambda, 4.0, lambda, g);
        EXPECT_NEAR(std::abs(a.elements(2) - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(element_los_angle(0, 0.5 * lambda, 4.0, g), g, 1e-15);
    }
}

TEST(NearField, NormMatchesSpreading) {
    const double d0 = 4.0, da = 0.5 * lambda;
    for (int M : {1, 2, 4}) {
        const auto a = nearfield_steering(M, da, d0, lambda, 1.3);
        double expect = 0.0;
        for (int m = -M; m <= M; ++m) expect += d0 * d0 / (d0 * d0 + m * m * da * da);
        EXPECT_NEAR(a.elements.squaredNorm(), expect, 1e-12);
    }
}

TEST(NearField, BroadsideIsFreeSpaceVector) {
    const Scene s = make_scene(fc, 2, 0.5 * lambda, 4.0, 0.9);
    const auto a = nearfield_steering(2, 0.5 * lambda, 4.0, lambda, pi / 2);
    for (int m = -2; m <= 2; ++m) {
        const cplx f = free_space_ratio(s, m);
        EXPECT_LT(std::abs(a.elements(m + 2) - f), 1e-9 * std::abs(f));
    }
}

TEST(NearField, FarLimitIsPlanar) {
    for (double g : {0.4, 1.0, pi / 2, 2.2}) {
        const auto n = nearfield_steering(2, 0.5 * lambda, 1e6, lambda, g);
        const auto p = planar_steering(2, 0.5 * lambda, lambda, g);
        for (int i = 0; i < 5; ++i) {
            EXPECT_LT(std::abs(std::abs(n.elements(i)) - std::abs(p.elements(i))), 1e-4);
            EXPECT_LT(std::abs(std::arg(n.elements(i) / p.elements(i))), 1e-4);
        }
    }
}

TEST(NearField, ConvergenceIsMonotone) {
    double previous = 1e9;
    for (double d0 : {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0}) {
        const auto n = nearfield_steering(2, 0.5 * lambda, d0, lambda, 1.0);
        const auto p = planar_steering(2, 0.5 * lambda, lambda, 1.0);
        const double dev = (n.elements - p.elements).cwiseAbs().maxCoeff();
        EXPECT_LT(dev, previous);
        previous = dev;
    }
}

TEST(NearField, InvalidGeometry) {
    // Element far off axis close to the TX: arccos argument out of range.
    try {
        nearfield_steering(3, 1.0, 0.1, lambda, 0.05);
        FAIL() << "expected geometry_error";
    } catch (const geometry_error& e) {
        EXPECT_NE(std::string(e.what()).find("invalid near-field geometry"), std::string::npos);
    }
}

TEST(Weights, Uniform) {
    EXPECT_EQ(uniform_weights(0).w.size(), 1);
    EXPECT_EQ(uniform_weights(0).w(0), cplx(1.0));
    const auto w = uniform_weights(4);
    ASSERT_EQ(w.w.size(), 9);
    for (int i = 0; i < 9; ++i) EXPECT_DOUBLE_EQ(w.w(i).real(), 1.0 / 9.0);
    for (int M : {0, 1, 2, 7, 20}) EXPECT_NEAR(uniform_weights(M).w.sum().real(), 1.0, 1e-14);
}

TEST(ArrayFactor, Broadside) {
    EXPECT_NEAR(std::abs(array_factor(uniform_weights(4), planar_steering(4, 0.5 * lambda, lambda, pi / 2)) - 1.0),
                0.0, 1e-14);
}

TEST(ArrayFactor, FirstNull) {
    const double g = std::acos(2.0 / 9.0);
    EXPECT_LT(std::abs(array_factor(uniform_weights(4), planar_steering(4, 0.5 * lambda, lambda, g))), 1e-14);
}

TEST(ArrayFactor, ClosedForm) {
    const auto w = uniform_weights(4);
    for (double r : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        for (int i = 1; i < 360; ++i) {
            const double g = deg_to_rad(0.5 * i);
            const cplx fa = array_factor(w, planar_steering(4, r * lambda, lambda, g));
            EXPECT_NEAR(fa.real(), oracles::dirichlet_array_factor(4, r * lambda, lambda, g), 1e-12);
            EXPECT_NEAR(fa.imag(), 0.0, 1e-12);
        }
    }
}

TEST(ArrayFactor, SideLobesBelowTwelveDb) {
    const auto w = uniform_weights(4);
    const double first_null = std::acos(2.0 / 9.0);
    double worst = -1e9;
    for (int i = 1; i < 4000; ++i) {
        const double g = pi * i / 4000;
        if (std::abs(g - pi / 2) <= std::abs(first_null - pi / 2)) continue;
        const double db = 20 * std::log10(std::abs(array_factor(w, planar_steering(4, 0.5 * lambda, lambda, g))));
        worst = std::max(worst, db);
    }
    EXPECT_LT(worst, -12.0);
}

TEST(ArrayFactor, LengthMismatch) {
    EXPECT_THROW(array_factor(uniform_weights(2), planar_steering(3, 0.5 * lambda, lambda, 1.0)), invalid_argument);
}

TEST(LobeWidth, HalfWavelengthNineElements) {
    const auto w = first_lobe_width(4, 0.5 * lambda, lambda);
    EXPECT_NEAR(w.approximate, 2.0 / 4.5, 1e-12);
    EXPECT_NEAR(w.about_broadside, 2 * std::abs(std::acos(1 / 4.5) - pi / 2), 1e-12);
    EXPECT_NEAR(w.literal, 2 * std::acos(1 / 4.5), 1e-12);
}

TEST(LobeWidth, BoundaryAndTooShort) {
    const auto w = first_lobe_width(0, lambda, lambda);
    EXPECT_NEAR(w.literal, 0.0, 1e-7);
    EXPECT_THROW(first_lobe_width(0, 0.5 * lambda, lambda), invalid_argument);
}

TEST(LobeWidth, LongArrayApproximation) {
    // (2M+1) d_a = 20 lambda
    const auto w = first_lobe_width(19, 20.0 / 39.0 * lambda, lambda);
    EXPECT_LT(std::abs(w.about_broadside - w.approximate) / w.approximate, 0.02);
}
