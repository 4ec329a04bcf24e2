#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "epm/baselines.hpp"
#include "epm/config_io.hpp"
#include "epm/errors.hpp"
#include "test_support.hpp"

using namespace epm;
using epm::test::rel;

namespace {

BaselineParams flat_ratio(double r, double eta) {
    BaselineParams bp;
    bp.eta = eta;
    bp.lift_to_drag = quad::PiecewiseLinear({0.0, 50.0}, {r, r});
    bp.rotor_count = 8;
    bp.spin_area = std::numbers::pi * 0.19 * 0.19;
    bp.g = 10.0;
    return bp;
}

} // namespace

TEST(LiftDrag, Arithmetic) {
    // m g = 30 N, r = 3, eta = 0.5.
    EXPECT_NEAR(epm_lift_drag(3.0, 10.0, flat_ratio(3.0, 0.5)), 20.0, 1e-12);
}

TEST(LiftDrag, LinearInMassAndTableBounds) {
    const auto bp = load_baseline_params(test::data_path("baseline_params.yaml")).params;
    EXPECT_LT(rel(epm_lift_drag(6.0, 9.0, bp), 2.0 * epm_lift_drag(3.0, 9.0, bp)), 1e-15);
    EXPECT_THROW(epm_lift_drag(3.0, 1.0, bp), DomainError);
    EXPECT_THROW(epm_lift_drag(3.0, 25.0, bp), DomainError);
}

TEST(HoverModel, ThreeHalvesPowerLaw) {
    const auto bp = flat_ratio(3.0, 0.7);
    const std::vector<double> a{1.0, 1.5, 0.5};
    const std::vector<double> b{2.0, 3.0, 1.0};
    EXPECT_NEAR(epm_hover_model(b, 8.0, bp, 1.225) / epm_hover_model(a, 8.0, bp, 1.225), std::pow(2.0, 1.5), 1e-12);
}

TEST(HoverModel, LiteralFormulaAndAnyComponentCount) {
    const auto bp = flat_ratio(3.0, 0.7);
    const std::vector<double> parts{1.0, 0.5, 0.25, 0.25};
    const double M = 2.0;
    const double expected = std::pow(bp.g * M, 1.5) / (bp.eta * 6.0 * std::sqrt(2 * 8 * 1.225 * bp.spin_area));
    EXPECT_LT(rel(epm_hover_model(parts, 6.0, bp, 1.225), expected), 1e-14);
}

TEST(HoverModel, MonotoneDecreasingInVelocity) {
    const auto bp = flat_ratio(3.0, 0.7);
    const std::vector<double> m{3.5};
    double prev = epm_hover_model(m, 0.5, bp, 1.225);
    for (double v = 1.0; v < 30; v += 0.5) {
        const double e = epm_hover_model(m, v, bp, 1.225);
        EXPECT_LT(e, prev);
        prev = e;
    }
}

TEST(Baselines, HomogeneousUnderRandomScaling) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> k(0.1, 10.0);
    const auto bp = flat_ratio(2.5, 0.6);
    for (int i = 0; i < 50; ++i) {
        const double s = k(rng);
        const std::vector<double> a{1.2, 0.7};
        const std::vector<double> b{1.2 * s, 0.7 * s};
        EXPECT_LT(rel(epm_lift_drag(1.9 * s, 7.0, bp), s * epm_lift_drag(1.9, 7.0, bp)), 1e-13);
        EXPECT_LT(rel(epm_hover_model(b, 7.0, bp, 1.2), std::pow(s, 1.5) * epm_hover_model(a, 7.0, bp, 1.2)), 1e-13);
    }
}

TEST(BaselineParams, Validation) {
    auto bp = flat_ratio(3.0, 0.5);
    EXPECT_TRUE(validate_baseline(bp).empty());
    bp.eta = 1.5;
    bp.spin_area = 0.0;
    EXPECT_EQ(validate_baseline(bp).size(), 2u);
}

TEST(DivergenceReport, PhysicsSpreadsOnBothAxes) {
    const auto &cfg = test::reference();
    const auto coeffs = rotor_coefficients(cfg);
    const auto bp = load_baseline_params(test::data_path("baseline_params.yaml")).params;
    const std::vector<double> masses{3.5, 7.0, 14.0};
    const std::vector<double> vx{4.0, 8.0, 12.0};
    const std::vector<double> th{0.1, 0.25, 0.5};
    const auto rep = divergence_report(cfg, coeffs, bp, masses, vx, th);
    int physics_vx = 0, physics_th = 0;
    for (const auto &row : rep.rows) {
        if (row.model == BaselineModel::physics && row.axis == Axis::fixed_vx) {
            EXPECT_GT(row.spread_epm_per_mass, 0.01);
            ++physics_vx;
        }
        if (row.model == BaselineModel::physics && row.axis == Axis::fixed_theta) {
            EXPECT_LT(row.spread_epm_per_mass, 1e-8);
            ++physics_th;
        }
        if (row.model == BaselineModel::lift_drag && row.axis == Axis::fixed_vx) {
            EXPECT_EQ(row.spread_epm_per_mass, 0.0);
        }
        if (row.model == BaselineModel::hover && row.axis == Axis::fixed_vx) {
            EXPECT_LT(row.spread_native, 1e-12);
            EXPECT_GT(row.spread_epm_per_mass, 0.1);
        }
    }
    EXPECT_EQ(physics_vx, 3);
    EXPECT_EQ(physics_th, 3);
}
