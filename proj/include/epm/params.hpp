#pragma once

#include <string>
#include <vector>

#include "epm/options.hpp"
#include "epm/quadrature.hpp"

namespace epm {

/// Thrust integrals stop at this fraction of the tip radius to approximate tip loss.
inline constexpr double kTipLossFraction = 0.97;

struct Environment {
    double rho = 1.225; ///< air density [kg/m^3]
    double g = 9.81;    ///< gravitational acceleration [m/s^2]
};

struct BladeGeometry {
    double tip_radius = 0.0;  ///< R [m]
    double root_radius = 0.0; ///< R0 [m]
    int blades = 2;           ///< Nb per propeller
    double lift_slope = 0.0;  ///< a [1/rad]
    double drag_coeff = 0.0;  ///< cd
    quad::PiecewiseLinear chord; ///< c(r) [m]
    quad::PiecewiseLinear twist; ///< theta(r) [rad]
};

struct VehicleConfig {
    Environment env;
    BladeGeometry blade;
    int propellers = 1;     ///< Np
    double dry_mass = 0.0;  ///< mv [kg]
    double body_drag = 0.0; ///< Cbd [kg/m], drag force = Cbd * Vx^2
};

struct Violation {
    std::string field;
    std::string rule;
};

/// Lists every violated invariant; empty when the configuration is usable.
std::vector<Violation> validate_config(const VehicleConfig &cfg);

/// Throws DomainError naming the first violation, if any.
void require_valid(const VehicleConfig &cfg);

struct ThrustCoefficients {
    double bt1 = 0.0;
    double bt2 = 0.0;
    double bt3 = 0.0;
};

struct TorqueCoefficients {
    double cq1 = 0.0;
    double cq2 = 0.0;
    double cq3 = 0.0;
    double cq4 = 0.0; ///< multiplies -(Vx sin(theta) + vi)^2
    CoefficientMode mode = CoefficientMode::oracle_consistent;
};

/**
 * Lumped coefficients of the coefficient-form thrust and torque, all propellers included:
 *
 *   T = bt1 w^2 + bt2 vx^2 / 2 - bt3 w u_pr
 *   Q = cq1 w^2 + cq2 vx^2 + cq3 u_pr w - cq4 u_pr^2
 */
struct RotorCoefficients {
    double bt1 = 0.0;
    double bt2 = 0.0;
    double bt3 = 0.0;
    double cq1 = 0.0;
    double cq2 = 0.0;
    double cq3 = 0.0;
    double cq4 = 0.0;
    CoefficientMode mode = CoefficientMode::oracle_consistent;
};

/// Thrust integrals over [R0, 0.97 R].
ThrustCoefficients thrust_coefficients(const VehicleConfig &cfg, const ModelOptions &opts = {});

/**
 * Torque integrals over [R0, R]. In oracle_consistent mode every integral carries exactly one
 * blade-element prefactor; as_published evaluates the printed expressions on top of the
 * already-prefactored thrust coefficients.
 */
TorqueCoefficients torque_coefficients(const VehicleConfig &cfg, CoefficientMode mode,
                                       const ModelOptions &opts = {});

RotorCoefficients rotor_coefficients(const VehicleConfig &cfg, CoefficientMode mode,
                                     const ModelOptions &opts = {});

inline RotorCoefficients rotor_coefficients(const VehicleConfig &cfg, const ModelOptions &opts = {}) {
    return rotor_coefficients(cfg, opts.coefficient_mode, opts);
}

/// Union of chord and twist sample abscissae; nodes for breakpoint-aligned quadrature.
std::vector<double> profile_breakpoints(const BladeGeometry &blade);

/// Rotor disk area of one propeller, pi R^2.
double disk_area(const VehicleConfig &cfg);

} // namespace epm
