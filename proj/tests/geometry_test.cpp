#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ringeq/geometry.hpp"
#include "ringeq/solver.hpp"

using namespace ringeq;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Point2> circle_points(int m, double r = 1.0) {
    std::vector<Point2> v;
    for (int i = 0; i <= m; ++i) v.push_back({r * std::cos(2 * kPi * i / m), r * std::sin(2 * kPi * i / m)});
    return v;
}

}  // namespace

TEST(Geometry, CircleIsSimpleWithKnownArea) {
    const auto pts = circle_points(720);
    EXPECT_FALSE(self_intersects(pts));
    EXPECT_NEAR(enclosed_area(pts), kPi, 1e-4);
}

TEST(Geometry, FigureEightCrosses) {
    std::vector<Point2> v;
    for (int i = 0; i <= 800; ++i) {
        const double t = 2 * kPi * i / 800;
        v.push_back({std::sin(t), std::sin(t) * std::cos(t)});
    }
    EXPECT_TRUE(self_intersects(v));
}

TEST(Geometry, TangentialTouchIsNotACrossing) {
    // two unit circles touching at the origin, traced as one closed curve
    std::vector<Point2> v;
    for (int i = 0; i < 400; ++i) {
        const double t = 2 * kPi * i / 400;
        v.push_back({1.0 - std::cos(t), std::sin(t)});
    }
    for (int i = 0; i <= 400; ++i) {
        const double t = 2 * kPi * i / 400;
        v.push_back({-1.0 + std::cos(t), std::sin(t)});
    }
    EXPECT_FALSE(self_intersects(v));
}

TEST(Geometry, CircleSolutionMapsToUnitCircle) {
    const auto sol = CurvatureSolution::circle(1.0, 2.0);
    for (double s : {0.0, 1.0, 4.0}) {
        const auto r = shape_point(s, sol);
        EXPECT_NEAR(norm(r), 1.0, 1e-14);
    }
    const auto poly = sample_shape(sol, 1, 400);
    EXPECT_LT(poly.diagnostics.closure_error, 1e-13);
    EXPECT_FALSE(poly.diagnostics.self_intersecting);
    EXPECT_EQ(poly.diagnostics.mode_n, 1);
}

class SolvedShape : public ::testing::TestWithParam<std::pair<int, double>> {};

TEST_P(SolvedShape, GeometricIdentities) {
    const auto [n, sigma] = GetParam();
    const auto st = solve_equilibrium(n, sigma);
    const auto sol = st.solution();
    const auto& p = sol.params();
    const auto poly = sample_shape(sol, n, 4000);
    EXPECT_LT(poly.diagnostics.closure_error, 1e-9);
    EXPECT_LT(poly.diagnostics.length_error, 1e-9);
    EXPECT_LT(poly.diagnostics.slope_closure_error, 1e-8);
    const double ds = poly.samples[1].s - poly.samples[0].s;
    for (std::size_t i = 1; i + 1 < poly.samples.size(); i += 37) {
        const auto& a = poly.samples[i - 1];
        const auto& b = poly.samples[i + 1];
        const auto& c = poly.samples[i];
        // unit speed and phi' = kappa by central differences
        const double speed = std::hypot(b.x - a.x, b.y - a.y) / (2 * ds);
        EXPECT_NEAR(speed, 1.0, 1e-4 * (1.0 + c.kappa * c.kappa));
        EXPECT_NEAR((b.phi - a.phi) / (2 * ds), c.kappa, 1e-4 * (1.0 + std::abs(c.kappa)));
        const double r2 = c.x * c.x + c.y * c.y;
        EXPECT_NEAR(c.kappa, 0.5 * p.sigma * r2 - (p.mu * p.mu + p.epsilon) / (2 * p.sigma),
                    1e-9 * std::max(1.0, std::abs(c.kappa)));
        EXPECT_NEAR(std::hypot(c.N, c.Q), p.sigma * std::sqrt(r2), 1e-9 * std::max(1.0, p.sigma));
    }
}

INSTANTIATE_TEST_SUITE_P(Shapes, SolvedShape,
                         ::testing::Values(std::pair{2, 4.75}, std::pair{3, 16.25}, std::pair{4, 35.25},
                                           std::pair{2, 9.24}, std::pair{3, 56.09}, std::pair{3, 81.81}));

TEST(Geometry, SymmetryOfSolvedShape) {
    const auto st = solve_equilibrium(3, 16.25);
    const auto poly = sample_shape(st.solution(), 3, 1200);
    EXPECT_LT(symmetry_check(poly, st.solution(), 3), 5e-3);
}

TEST(Geometry, SamplingNeedsEnoughPoints) {
    const auto st = solve_equilibrium(3, 16.25);
    EXPECT_THROW(sample_shape(st.solution(), 3, 20), DomainError);
}
