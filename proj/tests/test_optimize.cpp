#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "epm/optimize.hpp"
#include "epm/trim.hpp"
#include "test_support.hpp"

using namespace epm;
using epm::test::rel;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

const RotorCoefficients &coeffs() {
    static const auto c = rotor_coefficients(test::reference());
    return c;
}

const OptimalPoint &reference_optimum() {
    static const auto p = find_optimal_pitch(test::reference().dry_mass, test::reference(), coeffs());
    return p;
}

struct Scan {
    double argmin = 0;
    double min = 0;
    double step = 0;
};

Scan dense_pitch_scan(double m, int n = 10000) {
    const ModelOptions opts;
    Scan s;
    s.step = (opts.max_pitch_rad - opts.min_pitch_rad) / (n - 1);
    s.min = INFINITY;
    for (int i = 0; i < n; ++i) {
        const double th = opts.min_pitch_rad + i * s.step;
        const double e = trim_state(th, m, test::reference(), coeffs()).epm;
        if (e < s.min) {
            s.min = e;
            s.argmin = th;
        }
    }
    return s;
}

} // namespace

TEST(OptimalPitch, AgreesWithDenseScan) {
    const auto &p = reference_optimum();
    const auto scan = dense_pitch_scan(p.mass);
    EXPECT_LE(std::abs(p.theta_star - scan.argmin), scan.step);
    EXPECT_LE(p.epm_at_mass, scan.min * (1 + 1e-14));
}

TEST(OptimalPitch, InteriorStationaryMinimum) {
    const auto &p = reference_optimum();
    EXPECT_TRUE(p.meta.interior);
    EXPECT_TRUE(p.meta.converged);
    EXPECT_LT(std::abs(p.meta.fd_slope), 1e-4 * p.epm_at_mass);
    EXPECT_GT(p.meta.fd_curvature, 0.0);
}

TEST(OptimalPitch, BoundaryMinimumIsFlagged) {
    ModelOptions opts;
    opts.max_pitch_rad = 5 * kDeg;
    const auto p = find_optimal_pitch(3.5, test::reference(), coeffs(), opts);
    EXPECT_FALSE(p.meta.interior);
    EXPECT_NEAR(p.theta_star, opts.max_pitch_rad, 1e-6);
}

TEST(OptimalPitch, MassIndependence) {
    const auto &cfg = test::reference();
    const auto a = find_optimal_pitch(2.0, cfg, coeffs());
    const auto b = find_optimal_pitch(8.0, cfg, coeffs());
    EXPECT_LT(std::abs(a.theta_star - b.theta_star), 1e-7);
    EXPECT_LT(rel(b.epm_at_mass / 8.0, a.epm_at_mass / 2.0), 1e-8);
    EXPECT_LT(rel(b.C, a.C), 1e-8);
}

TEST(EfficiencyConstant, MassIndependentAndPositive) {
    const auto &cfg = test::reference();
    const double C = efficiency_constant(cfg, coeffs());
    EXPECT_GT(C, 0.0);
    const double m = cfg.dry_mass;
    EXPECT_LT(rel(find_optimal_pitch(m, cfg, coeffs()).C, C), 1e-8);
    EXPECT_LT(rel(find_optimal_pitch(3 * m, cfg, coeffs()).C, C), 1e-8);
}

TEST(EfficiencyConstant, MatchesDenseGridMinimum) {
    const double C = efficiency_constant(test::reference(), coeffs());
    const auto scan = dense_pitch_scan(1.0);
    EXPECT_LE(C, scan.min * (1 + 1e-14));
    EXPECT_LT(rel(scan.min, C), 1e-7);
}

TEST(OptimalVelocity, SqrtMassAndDenseGridArgmin) {
    const auto &cfg = test::reference();
    const EnergyOptimizer opt(cfg, coeffs());
    EXPECT_LT(rel(opt.optimal_velocity(14.0), 2.0 * opt.optimal_velocity(3.5)), 1e-12);
    EXPECT_GT(opt.optimal_velocity(5.0), opt.optimal_velocity(4.0));
    EXPECT_LT(rel(optimal_velocity(3.5, cfg, coeffs()), opt.optimal_velocity(3.5)), 1e-12);

    const double m = 3.5;
    const double vmax = velocity_from_pitch(60 * kDeg, m, cfg);
    const int n = 4000;
    const double step = (vmax - 1.0) / (n - 1);
    double best = INFINITY, arg = 0;
    for (int i = 0; i < n; ++i) {
        const double v = 1.0 + i * step;
        const double e = epm_of_velocity(v, m, cfg, coeffs());
        if (e < best) {
            best = e;
            arg = v;
        }
    }
    EXPECT_LE(std::abs(opt.optimal_velocity(m) - arg), step);
}

TEST(MinEnergy, LinearityAndTimeOfFlight) {
    const auto &cfg = test::reference();
    const EnergyOptimizer opt(cfg, coeffs());
    EXPECT_EQ(opt.min_energy(3.5, 0.0), 0.0);
    EXPECT_LT(rel(opt.min_energy(7.0, 1200.0), 2.0 * opt.min_energy(3.5, 1200.0)), 1e-12);
    for (double m : {1.0, 3.5, 9.0}) {
        const double L = 5000.0;
        const double v = opt.optimal_velocity(m);
        const auto s = trim_state(pitch_from_velocity(v, m, cfg), m, cfg, coeffs());
        EXPECT_LT(rel(opt.min_energy(m, L), s.power * (L / v)), 1e-8);
    }
    EXPECT_LT(rel(min_energy(3.5, 800.0, cfg, coeffs()), opt.min_energy(3.5, 800.0)), 1e-12);
}

TEST(MaxRange, RoundTrip) {
    const EnergyOptimizer opt(test::reference(), coeffs());
    EXPECT_EQ(opt.max_range(0.0, 3.5), 0.0);
    for (double E : {1e3, 2.5e5, 7e6}) {
        EXPECT_LT(rel(opt.min_energy(3.5, opt.max_range(E, 3.5)), E), 1e-12);
    }
    EXPECT_LT(rel(opt.max_range(1e5, 2.0), 2.0 * opt.max_range(1e5, 4.0)), 1e-12);
}

TEST(EnergyOptimizer, SolvesOnceAcrossThreads) {
    const EnergyOptimizer opt(test::reference(), coeffs());
    std::vector<const OptimalPoint *> seen(4);
    {
        std::vector<std::jthread> pool;
        for (int i = 0; i < 4; ++i) {
            pool.emplace_back([&, i] { seen[i] = &opt.optimum(); });
        }
    }
    for (auto *p : seen) {
        EXPECT_EQ(p, seen[0]);
    }
    EXPECT_LT(std::abs(opt.theta_star() - reference_optimum().theta_star), 1e-7);
}

TEST(Sweep, OrderingAndCounts) {
    const std::vector<double> masses{7.0, 1.0, 3.5};
    const std::vector<double> thetas{0.3, 0.1, 0.2, 2.0};
    const auto rows = sweep_pitch(masses, thetas, test::reference(), coeffs());
    ASSERT_EQ(rows.size(), 12u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_TRUE(rows[i - 1].mass < rows[i].mass ||
                    (rows[i - 1].mass == rows[i].mass && rows[i - 1].theta < rows[i].theta));
    }
    // 2 rad exceeds the pitch cap: marked, not dropped.
    EXPECT_FALSE(rows[3].state.has_value());
    EXPECT_NE(rows[3].status.find("infeasible"), std::string::npos);
    EXPECT_EQ(rows[0].status, "ok");
}

TEST(Sweep, VelocityRowsUseTrimPitch) {
    const std::vector<double> masses{3.5};
    const std::vector<double> vxs{4.0, 9.0};
    const auto rows = sweep_velocity(masses, vxs, test::reference(), coeffs());
    ASSERT_EQ(rows.size(), 2u);
    for (const auto &r : rows) {
        ASSERT_TRUE(r.state);
        EXPECT_NEAR(r.theta, pitch_from_velocity(r.state->vx, 3.5, test::reference()), 1e-12);
    }
}

TEST(MassStudy, InvarianceAndCommonMinimum) {
    const auto &cfg = test::reference();
    const double m = cfg.dry_mass;
    const std::vector<double> masses{m, 2 * m, 4 * m, 8 * m};
    std::vector<double> thetas;
    for (int i = 1; i <= 60; ++i) {
        thetas.push_back(i * kDeg);
    }
    const auto study = mass_scaling_study(masses, thetas, cfg, coeffs());
    EXPECT_TRUE(study.invariance.within(Tolerances{}));
    EXPECT_LE(study.invariance.theta_spread, 1e-7);
    EXPECT_LE(study.invariance.epm_per_mass_spread, 1e-8);
    EXPECT_LE(study.invariance.vx_per_sqrt_mass_spread, 1e-8);
    ASSERT_EQ(study.optima.size(), 4u);
    ASSERT_EQ(study.sweep.size(), 4u * thetas.size());
    // Each pitch-vs-velocity curve passes through theta* at its own Vx*.
    for (const auto &p : study.optima) {
        EXPECT_NEAR(pitch_from_velocity(p.vx_star(p.mass), p.mass, cfg), study.optima[0].theta_star, 1e-7);
    }
}

TEST(RelativeSpread, Definition) {
    const std::vector<double> v{1.0, 2.0, 3.0};
    EXPECT_DOUBLE_EQ(relative_spread(v), 1.0);
}
