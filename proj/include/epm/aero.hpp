#pragma once

#include <array>
#include <string_view>

#include "epm/options.hpp"
#include "epm/params.hpp"
#include "epm/quadrature.hpp"

namespace epm {

/// Rotor-frame inflow for steady horizontal flight. u_pr = Vx sin(theta) + vi throughout.
struct InflowState {
    double vx_inplane = 0.0; ///< Vx cos(theta) (consistent frame) or Vx (printed forms)
    double upr = 0.0;        ///< perpendicular inflow
};

InflowState rotor_inflow(double vx, double theta, double vi, FrameMode frame);

struct QuarticRoot {
    double vi = 0.0;
    double residual_rel = 0.0; ///< |f(vi)| / rhs
    int bisection_steps = 0;
    int newton_steps = 0;
};

/**
 * Momentum-theory induced velocity: the unique positive root of
 *
 *   vi^4 + 2 Vx sin(theta) vi^3 + Vx^2 vi^2 = (T / (2 Np rho pi R^2))^2
 *
 * with T the total thrust. Bisection on [0, 10 v_hover], then Newton polish.
 */
QuarticRoot solve_inflow_quartic(double thrust_total, double vx, double theta,
                                 const VehicleConfig &cfg, const Tolerances &tol = {});

inline double induced_velocity_numeric(double thrust_total, double vx, double theta,
                                       const VehicleConfig &cfg, const Tolerances &tol = {}) {
    return solve_inflow_quartic(thrust_total, vx, theta, cfg, tol).vi;
}

/// Left side minus right side of the inflow quartic, for residual checks.
double inflow_quartic_residual(double vi, double thrust_total, double vx, double theta,
                               const VehicleConfig &cfg);

enum class ClosedFormVariant {
    ferrari,          ///< the resolvent chain with correct signs
    typeset_main,      ///< the published normalized solution, sign and factor slips included
    typeset_alternate, ///< the second published variant, which differs in its radicand denominators
};

std::string_view to_string(ClosedFormVariant v);
inline constexpr std::array kClosedFormVariants{ClosedFormVariant::ferrari, ClosedFormVariant::typeset_main,
                                                ClosedFormVariant::typeset_alternate};

/// Intermediates of the mass-independent trim quartic x^4 + 2 s x^3 + x^2 - K2 / s^2 = 0, x = vi / Vx.
struct ResolventChain {
    double k2 = 0.0;
    double p = 0.0;
    double q = 0.0;
    double delta0 = 0.0;
    double delta1 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0; ///< S2' = S2 / Vx
    double x = 0.0;  ///< vi / Vx
};

/// Throws ClosedFormInapplicableError on a negative radicand or |S2'| < 1e-12.
ResolventChain resolvent_chain(double theta, const VehicleConfig &cfg,
                               ClosedFormVariant variant = ClosedFormVariant::ferrari);

struct ClosedFormInflow {
    double vi = 0.0;
    double numeric_vi = 0.0;
    double rel_error = 0.0;
    bool validated = false; ///< rel_error within Tolerances::closed_form_rel
    bool hover_limit = false;
};

/**
 * Induced velocity at trim, vi = sqrt(m) vi'(theta), from the closed-form quartic solution.
 * The result is compared against the numeric root at the trim thrust mg / cos(theta); a
 * mismatch is reported through `validated`, not thrown. theta <= 0 returns the hover root.
 */
ClosedFormInflow induced_velocity_closed_form(double theta, double mass, const VehicleConfig &cfg,
                                              ClosedFormVariant variant = ClosedFormVariant::ferrari,
                                              const Tolerances &tol = {});

/// T = bt1 w^2 + bt2 vx^2 / 2 - bt3 w (Vx sin(theta) + vi); vx per frame mode.
double thrust_coefficient_form(double omega, double vx, double theta, double vi,
                               const RotorCoefficients &c, FrameMode frame = FrameMode::consistent);

/// Q = cq1 w^2 + cq2 vx^2 + cq3 u_pr w - cq4 u_pr^2; cq4 encodes the coefficient mode.
double torque_coefficient_form(double omega, double vx, double theta, double vi,
                               const RotorCoefficients &c, FrameMode frame = FrameMode::consistent);

struct RotorLoads {
    double thrust = 0.0; ///< N, all propellers
    double torque = 0.0; ///< N m, all propellers
};

/**
 * Blade-element thrust and torque by direct double integration over azimuth and radius,
 * averaged over one revolution and multiplied by Np. Thrust runs to 0.97 R, torque to R.
 * Node tables are built once; evaluation is cheap enough for dense grids.
 */
class BemtOracle {
  public:
    explicit BemtOracle(const VehicleConfig &cfg, const ModelOptions &opts = {},
                        InflowAngle angle = InflowAngle::small_angle);

    /// Throws OracleDomainError if u_pl = w r + vx sin(psi) <= 0 anywhere, QuadratureError if
    /// the half-resolution comparison fails.
    [[nodiscard]] RotorLoads operator()(double omega, double vx_inplane, double upr) const;

  private:
    struct Grid {
        std::vector<double> r, wr, chord, twist;
        std::vector<double> sin_psi, wpsi;
    };
    struct Sums {
        quad::Estimate thrust, torque;
    };
    [[nodiscard]] Sums integrate(const Grid &thrust_grid, const Grid &torque_grid, double omega,
                                 double vx, double upr) const;
    Grid make_grid(double upper, int radial, int azimuth) const;

    VehicleConfig cfg_;
    ModelOptions opts_;
    InflowAngle angle_;
    Grid thrust_fine_, torque_fine_, thrust_coarse_, torque_coarse_;
};

inline RotorLoads bemt_oracle(double omega, double vx_inplane, double upr, const VehicleConfig &cfg,
                              const ModelOptions &opts = {}) {
    return BemtOracle(cfg, opts)(omega, vx_inplane, upr);
}

} // namespace epm
