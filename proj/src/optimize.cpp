#include "epm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epm/errors.hpp"
#include "epm/minimize.hpp"
#include "epm/parallel.hpp"

namespace epm {

namespace {

constexpr double kBoundaryMargin = 1e-6; // rad
constexpr double kSlopeStep = 1e-4;
constexpr double kCurvatureStep = 1e-3;
constexpr double kPolishStep = 1e-5;

// Brent on function values stalls near sqrt(eps) in theta because the minimum is
// flat. The root of the centered difference is far less noisy, so refine there.
template <class F>
double polish_stationary_point(F &&f, double x, double lo, double hi, double xtol) {
    auto slope = [&](double t) { return (f(t + kPolishStep) - f(t - kPolishStep)) / (2.0 * kPolishStep); };
    const double lim_lo = lo + kPolishStep;
    const double lim_hi = hi - kPolishStep;
    if (!(x > lim_lo && x < lim_hi)) {
        return x;
    }
    double w = std::max(10.0 * xtol, 1e-8);
    double a = 0.0, b = 0.0, ga = 0.0, gb = 0.0;
    bool bracketed = false;
    for (int k = 0; k < 12 && !bracketed; ++k, w *= 4.0) {
        a = std::max(x - w, lim_lo);
        b = std::min(x + w, lim_hi);
        ga = slope(a);
        gb = slope(b);
        bracketed = ga < 0.0 && gb > 0.0;
    }
    if (!bracketed) {
        return x;
    }
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
        double c = a - ga * (b - a) / (gb - ga);
        if (!(c > a && c < b) || it % 3 == 2) {
            c = 0.5 * (a + b);
        }
        const double gc = slope(c);
        if (gc == 0.0) {
            return c;
        }
        if (gc < 0.0) {
            a = c;
            ga = gc;
        } else {
            b = c;
            gb = gc;
        }
    }
    return 0.5 * (a + b);
}

std::vector<SweepRow> run_sweep(std::vector<SweepRow> rows, const VehicleConfig &cfg,
                                const RotorCoefficients &coeffs, const ModelOptions &opts) {
    parallel_for(rows.size(), [&](std::size_t i) {
        auto &row = rows[i];
        try {
            row.state = trim_state(row.theta, row.mass, cfg, coeffs, opts);
        } catch (const Error &e) {
            row.state.reset();
            row.status = std::string("infeasible: ") + e.what();
        }
    });
    return rows;
}

} // namespace

double OptimalPoint::vx_star(double m) const { return std::sqrt(m) * vx_per_sqrt_mass; }

OptimalPoint find_optimal_pitch(double mass, const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                                const ModelOptions &opts) {
    if (!(mass > 0.0)) {
        throw DomainError("optimal pitch requires m > 0");
    }
    require_valid(cfg);
    auto epm = [&](double theta) { return trim_state(theta, mass, cfg, coeffs, opts).epm; };

    const double lo = opts.min_pitch_rad;
    const double hi = opts.max_pitch_rad;
    auto res = scalar::brent_minimize(epm, lo, hi, opts.tol.minimizer_xtol);
    res.x = polish_stationary_point(epm, res.x, lo, hi, opts.tol.minimizer_xtol);
    res.fx = epm(res.x);

    OptimalPoint pt;
    pt.theta_star = res.x;
    pt.mass = mass;
    pt.epm_at_mass = res.fx;
    pt.C = res.fx / mass;
    pt.vx_per_sqrt_mass = std::sqrt(cfg.env.g * std::tan(res.x) / cfg.body_drag);
    pt.meta.iterations = res.iterations;
    pt.meta.bracket_lo = lo;
    pt.meta.bracket_hi = hi;
    pt.meta.final_width = res.hi - res.lo;
    pt.meta.converged = res.converged;
    pt.meta.interior = res.x - lo > kBoundaryMargin && hi - res.x > kBoundaryMargin;
    if (res.x - kCurvatureStep >= lo && res.x + kCurvatureStep <= hi) {
        pt.meta.fd_slope = (epm(res.x + kSlopeStep) - epm(res.x - kSlopeStep)) / (2.0 * kSlopeStep);
        pt.meta.fd_curvature = (epm(res.x + kCurvatureStep) - 2.0 * res.fx + epm(res.x - kCurvatureStep)) /
                               (kCurvatureStep * kCurvatureStep);
    }
    return pt;
}

double efficiency_constant(const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                           const ModelOptions &opts) {
    return find_optimal_pitch(1.0, cfg, coeffs, opts).C;
}

double optimal_velocity(double mass, const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                        const ModelOptions &opts) {
    return EnergyOptimizer(cfg, coeffs, opts).optimal_velocity(mass);
}

double min_energy(double mass, double distance, const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                  const ModelOptions &opts) {
    return EnergyOptimizer(cfg, coeffs, opts).min_energy(mass, distance);
}

double max_range(double energy, double mass, const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                 const ModelOptions &opts) {
    return EnergyOptimizer(cfg, coeffs, opts).max_range(energy, mass);
}

EnergyOptimizer::EnergyOptimizer(VehicleConfig cfg, RotorCoefficients coeffs, ModelOptions opts)
    : cfg_(std::move(cfg)), coeffs_(coeffs), opts_(opts) {}

const OptimalPoint &EnergyOptimizer::optimum() const {
    std::call_once(once_, [this] { cached_ = find_optimal_pitch(1.0, cfg_, coeffs_, opts_); });
    return *cached_;
}

double EnergyOptimizer::optimal_velocity(double mass) const {
    if (!(mass > 0.0)) {
        throw DomainError("optimal velocity requires m > 0");
    }
    return velocity_from_pitch(optimum().theta_star, mass, cfg_);
}

double EnergyOptimizer::min_energy(double mass, double distance) const {
    if (!(distance >= 0.0)) {
        throw DomainError("distance must be non-negative");
    }
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    return efficiency_constant() * mass * distance;
}

double EnergyOptimizer::max_range(double energy, double mass) const {
    if (!(energy >= 0.0)) {
        throw DomainError("energy must be non-negative");
    }
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    return energy / (efficiency_constant() * mass);
}

std::vector<SweepRow> sweep_pitch(std::span<const double> masses, std::span<const double> thetas,
                                  const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                                  const ModelOptions &opts) {
    std::vector<double> ms(masses.begin(), masses.end());
    std::vector<double> ts(thetas.begin(), thetas.end());
    std::stable_sort(ms.begin(), ms.end());
    std::stable_sort(ts.begin(), ts.end());
    std::vector<SweepRow> rows;
    rows.reserve(ms.size() * ts.size());
    for (double m : ms) {
        for (double t : ts) {
            rows.push_back({m, t, std::nullopt, "ok"});
        }
    }
    return run_sweep(std::move(rows), cfg, coeffs, opts);
}

std::vector<SweepRow> sweep_velocity(std::span<const double> masses, std::span<const double> vxs,
                                     const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                                     const ModelOptions &opts) {
    std::vector<double> ms(masses.begin(), masses.end());
    std::vector<double> vs(vxs.begin(), vxs.end());
    std::stable_sort(ms.begin(), ms.end());
    std::stable_sort(vs.begin(), vs.end());
    std::vector<SweepRow> rows;
    rows.reserve(ms.size() * vs.size());
    for (double m : ms) {
        for (double v : vs) {
            // pitch is monotone in Vx at fixed mass, so (mass, theta) order is preserved
            rows.push_back({m, pitch_from_velocity(v, m, cfg), std::nullopt, "ok"});
        }
    }
    return run_sweep(std::move(rows), cfg, coeffs, opts);
}

double relative_spread(std::span<const double> values) {
    if (values.empty()) {
        return 0.0;
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    return (*hi - *lo) / std::abs(mean);
}

bool InvarianceReport::within(const Tolerances &tol) const {
    return theta_spread <= tol.theta_spread && epm_per_mass_spread <= tol.epm_spread &&
           vx_per_sqrt_mass_spread <= tol.vx_spread;
}

MassStudy mass_scaling_study(std::span<const double> masses, std::span<const double> thetas,
                             const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                             const ModelOptions &opts) {
    if (masses.empty()) {
        throw DomainError("mass study needs at least one mass");
    }
    MassStudy study;
    study.masses.assign(masses.begin(), masses.end());
    std::stable_sort(study.masses.begin(), study.masses.end());
    study.optima.resize(study.masses.size());
    parallel_for(study.masses.size(), [&](std::size_t i) {
        study.optima[i] = find_optimal_pitch(study.masses[i], cfg, coeffs, opts);
    });
    study.sweep = sweep_pitch(study.masses, thetas, cfg, coeffs, opts);

    std::vector<double> theta, epm_m, vx_sqrt;
    for (std::size_t i = 0; i < study.masses.size(); ++i) {
        const auto &o = study.optima[i];
        const double m = study.masses[i];
        theta.push_back(o.theta_star);
        epm_m.push_back(o.epm_at_mass / m);
        vx_sqrt.push_back(velocity_from_pitch(o.theta_star, m, cfg) / std::sqrt(m));
    }
    const auto [tlo, thi] = std::minmax_element(theta.begin(), theta.end());
    study.invariance.theta_spread = *thi - *tlo;
    study.invariance.epm_per_mass_spread = relative_spread(epm_m);
    study.invariance.vx_per_sqrt_mass_spread = relative_spread(vx_sqrt);
    return study;
}

} // namespace epm
