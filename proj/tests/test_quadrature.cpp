#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "epm/errors.hpp"
#include "epm/quadrature.hpp"

using namespace epm;

TEST(Simpson, ExactForCubics) {
    const auto rule = quad::simpson_rule(0.0, 2.0, 8);
    const auto est = quad::apply(rule, [](double x) { return x * x * x - 2 * x + 1; });
    EXPECT_NEAR(est.value, 4.0 - 4.0 + 2.0, 1e-14);
}

TEST(Simpson, BreakpointsAppearAsNodes) {
    const std::vector<double> bp{0.013, 0.5, 0.77};
    const auto rule = quad::simpson_rule(0.0, 1.0, bp, 40);
    for (double b : bp) {
        bool found = false;
        for (double x : rule.nodes) {
            found = found || x == b;
        }
        EXPECT_TRUE(found) << b;
    }
    double wsum = 0.0;
    for (double w : rule.weights) {
        wsum += w;
    }
    EXPECT_NEAR(wsum, 1.0, 1e-15);
}

TEST(Simpson, KinkedIntegrandExactWithAlignedNodes) {
    // |x - 0.3| is piecewise linear, so Simpson is exact once the kink is a node.
    const std::vector<double> bp{0.3};
    const auto rule = quad::simpson_rule(0.0, 1.0, bp, 10);
    const auto est = quad::apply(rule, [](double x) { return std::abs(x - 0.3); });
    EXPECT_NEAR(est.value, 0.5 * 0.09 + 0.5 * 0.49, 1e-15);
}

TEST(Integrate, RejectsTooFewIntervals) {
    EXPECT_THROW(quad::integrate([](double x) { return x; }, 0.0, 1.0, {}, 2, 1e-10, "f"), QuadratureError);
}

TEST(Integrate, ReportsNonConvergence) {
    auto f = [](double x) { return std::sin(40.0 * x); };
    EXPECT_THROW(quad::integrate(f, 0.0, 3.0, {}, 8, 1e-10, "oscillatory"), QuadratureError);
    EXPECT_NEAR(quad::integrate(f, 0.0, 3.0, {}, 40000, 1e-10, "oscillatory"), (1 - std::cos(120.0)) / 40.0, 1e-11);
}

TEST(PiecewiseLinear, InterpolatesAndRefusesExtrapolation) {
    const quad::PiecewiseLinear p({0.0, 1.0, 3.0}, {1.0, 3.0, -1.0});
    EXPECT_DOUBLE_EQ(p(0.5), 2.0);
    EXPECT_DOUBLE_EQ(p(2.0), 1.0);
    EXPECT_DOUBLE_EQ(p(3.0), -1.0);
    EXPECT_THROW((void)p(-1e-9), DomainError);
    EXPECT_THROW((void)p(3.1), DomainError);
    EXPECT_DOUBLE_EQ(p.scaled(2.0)(2.0), 2.0);
}
