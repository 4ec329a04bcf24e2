#include "epm/trim.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "epm/aero.hpp"
#include "epm/errors.hpp"

namespace epm {

namespace {

void require_mass(double mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw DomainError("mass must be positive");
    }
}

} // namespace

double velocity_from_pitch(double theta, double mass, const VehicleConfig &cfg) {
    require_mass(mass);
    if (!(theta >= 0.0 && theta < std::numbers::pi / 2)) {
        throw DomainError("pitch must lie in [0, pi/2)");
    }
    return std::sqrt(mass * cfg.env.g * std::tan(theta) / cfg.body_drag);
}

double pitch_from_velocity(double vx, double mass, const VehicleConfig &cfg) {
    require_mass(mass);
    if (!(vx >= 0.0)) {
        throw DomainError("velocity must be non-negative");
    }
    return std::atan(cfg.body_drag * vx * vx / (mass * cfg.env.g));
}

double rotor_speed(double theta, double mass, double vi, const VehicleConfig &cfg,
                   const RotorCoefficients &coeffs, FrameMode frame) {
    const double vx = velocity_from_pitch(theta, mass, cfg);
    const double thrust = mass * cfg.env.g / std::cos(theta);
    const auto in = rotor_inflow(vx, theta, vi, frame);

    const double a = coeffs.bt1;
    const double b = -coeffs.bt3 * in.upr;
    const double c = coeffs.bt2 * in.vx_inplane * in.vx_inplane / 2.0 - thrust;
    const double disc = b * b - 4.0 * a * c;
    if (!(a > 0.0) || !(disc >= 0.0)) {
        throw TrimInfeasibleError("rotor-speed quadratic has no real root");
    }
    const double omega = (-b + std::sqrt(disc)) / (2.0 * a);
    if (!(omega > 0.0)) {
        throw TrimInfeasibleError("rotor-speed quadratic has no positive root");
    }
    return omega;
}

TrimState trim_state(double theta, double mass, const VehicleConfig &cfg,
                     const RotorCoefficients &coeffs, const ModelOptions &opts) {
    require_mass(mass);
    if (!(theta >= 0.0) || theta > opts.max_pitch_rad * (1.0 + 1e-12)) {
        throw DomainError("pitch outside [0, max_pitch]");
    }
    TrimState s;
    s.mass = mass;
    s.theta = theta;
    s.vx = velocity_from_pitch(theta, mass, cfg);
    s.thrust = mass * cfg.env.g / std::cos(theta);
    s.vi = induced_velocity_numeric(s.thrust, s.vx, theta, cfg, opts.tol);
    s.omega = rotor_speed(theta, mass, s.vi, cfg, coeffs, opts.frame);
    s.torque = torque_coefficient_form(s.omega, s.vx, theta, s.vi, coeffs, opts.frame);
    s.power = s.torque * s.omega;
    s.epm = s.vx > 0.0 ? s.power / s.vx : std::numeric_limits<double>::infinity();
    return s;
}

double epm_of_velocity(double vx, double mass, const VehicleConfig &cfg,
                       const RotorCoefficients &coeffs, const ModelOptions &opts) {
    if (!(vx > 0.0)) {
        throw DomainError("EPM requires Vx > 0");
    }
    return trim_state(pitch_from_velocity(vx, mass, cfg), mass, cfg, coeffs, opts).epm;
}

} // namespace epm
