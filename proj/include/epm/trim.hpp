#pragma once

#include "epm/options.hpp"
#include "epm/params.hpp"

namespace epm {

/// One steady horizontal-flight operating point. Forces and torques are vehicle totals.
struct TrimState {
    double mass = 0.0;  ///< kg
    double theta = 0.0; ///< rad
    double vx = 0.0;    ///< m/s
    double thrust = 0.0;
    double vi = 0.0;
    double omega = 0.0;  ///< rad/s
    double torque = 0.0; ///< N m
    double power = 0.0;  ///< W, sum over propellers of Q_j w
    double epm = 0.0;    ///< J/m, +inf in hover

    [[nodiscard]] bool hover() const noexcept { return vx == 0.0; }
    [[nodiscard]] double epm_per_mass() const noexcept { return epm / mass; }
};

/// Vx = sqrt(m g tan(theta) / Cbd).
double velocity_from_pitch(double theta, double mass, const VehicleConfig &cfg);

/// theta = atan(Cbd Vx^2 / (m g)).
double pitch_from_velocity(double vx, double mass, const VehicleConfig &cfg);

/// Larger root of bt1 w^2 - bt3 u_pr w + (bt2 vx^2 / 2 - m g / cos(theta)) = 0, i.e. the rotor
/// speed at which the coefficient-form thrust equals the trim thrust. Throws TrimInfeasibleError.
double rotor_speed(double theta, double mass, double vi, const VehicleConfig &cfg,
                   const RotorCoefficients &coeffs, FrameMode frame = FrameMode::consistent);

/// Full trim chain at a pitch angle. theta = 0 is hover (epm = +inf); theta above
/// opts.max_pitch_rad is a DomainError.
TrimState trim_state(double theta, double mass, const VehicleConfig &cfg,
                     const RotorCoefficients &coeffs, const ModelOptions &opts = {});

double epm_of_velocity(double vx, double mass, const VehicleConfig &cfg,
                       const RotorCoefficients &coeffs, const ModelOptions &opts = {});

} // namespace epm
