#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "epm/options.hpp"
#include "epm/params.hpp"
#include "epm/trim.hpp"

namespace epm {

struct SolverMeta {
    int iterations = 0;
    double bracket_lo = 0.0; ///< search interval
    double bracket_hi = 0.0;
    double final_width = 0.0; ///< width of the last bracket around theta*
    bool converged = false;
    bool interior = false; ///< false: the minimum sits on the search boundary (model-validity warning)
    double fd_slope = 0.0;     ///< centered dEPM/dtheta at theta* [J/m/rad]
    double fd_curvature = 0.0; ///< centered second difference [J/m/rad^2]
};

/**
 * Energy-optimal operating point. theta* and C do not depend on mass; the per-mass velocity
 * and EPM follow from them.
 */
struct OptimalPoint {
    double theta_star = 0.0;      ///< rad
    double C = 0.0;               ///< J/(m kg)
    double vx_per_sqrt_mass = 0.0; ///< V'_x(theta*) = sqrt(g tan(theta*) / Cbd)
    double mass = 0.0;            ///< mass the search was run at
    double epm_at_mass = 0.0;     ///< EPM*(mass) as evaluated by the search
    SolverMeta meta;

    [[nodiscard]] double vx_star(double m) const;
    [[nodiscard]] double epm_star(double m) const { return C * m; }
};

/// Minimizes theta -> trim_state(theta, m).epm over [opts.min_pitch_rad, opts.max_pitch_rad].
OptimalPoint find_optimal_pitch(double mass, const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                                const ModelOptions &opts = {});

/// C from the optimum at unit mass.
double efficiency_constant(const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                           const ModelOptions &opts = {});

double optimal_velocity(double mass, const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                        const ModelOptions &opts = {});

/// E* = C m L.
double min_energy(double mass, double distance, const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                  const ModelOptions &opts = {});

/// L* = E / (C m).
double max_range(double energy, double mass, const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                 const ModelOptions &opts = {});

/**
 * Holds one vehicle model and solves for theta* once, on first use; every later query reuses
 * it. Safe to share across threads.
 */
class EnergyOptimizer {
  public:
    EnergyOptimizer(VehicleConfig cfg, RotorCoefficients coeffs, ModelOptions opts = {});

    [[nodiscard]] const OptimalPoint &optimum() const;
    [[nodiscard]] double efficiency_constant() const { return optimum().C; }
    [[nodiscard]] double theta_star() const { return optimum().theta_star; }
    [[nodiscard]] double optimal_velocity(double mass) const;
    [[nodiscard]] double min_energy(double mass, double distance) const;
    [[nodiscard]] double max_range(double energy, double mass) const;

    [[nodiscard]] const VehicleConfig &config() const noexcept { return cfg_; }
    [[nodiscard]] const RotorCoefficients &coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] const ModelOptions &options() const noexcept { return opts_; }

  private:
    VehicleConfig cfg_;
    RotorCoefficients coeffs_;
    ModelOptions opts_;
    mutable std::once_flag once_;
    mutable std::optional<OptimalPoint> cached_;
};

struct SweepRow {
    double mass = 0.0;
    double theta = 0.0;
    std::optional<TrimState> state; ///< empty when trim failed
    std::string status = "ok";
};

/// Trim at every (mass, theta) pair, rows ordered by (mass, theta). Rows are evaluated
/// concurrently; the output order does not depend on scheduling.
std::vector<SweepRow> sweep_pitch(std::span<const double> masses, std::span<const double> thetas,
                                  const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                                  const ModelOptions &opts = {});

/// Same over a velocity grid; each row's pitch is pitch_from_velocity(vx, mass).
std::vector<SweepRow> sweep_velocity(std::span<const double> masses, std::span<const double> vxs,
                                     const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                                     const ModelOptions &opts = {});

struct InvarianceReport {
    double theta_spread = 0.0;  ///< max - min of theta* [rad]
    double epm_per_mass_spread = 0.0; ///< (max - min) / mean of EPM*/m
    double vx_per_sqrt_mass_spread = 0.0; ///< (max - min) / mean of Vx*/sqrt(m)
    bool within(const Tolerances &tol) const;
};

struct MassStudy {
    std::vector<double> masses;
    std::vector<OptimalPoint> optima; ///< one search per mass
    std::vector<SweepRow> sweep;
    InvarianceReport invariance;
};

/// Per-mass EPM sweeps plus independent optimal-point searches, and the spread of the
/// invariant triple across the mass set.
MassStudy mass_scaling_study(std::span<const double> masses, std::span<const double> thetas,
                             const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                             const ModelOptions &opts = {});

/// (max - min) / mean.
double relative_spread(std::span<const double> values);

} // namespace epm
