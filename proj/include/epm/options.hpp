#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace epm {

/// How the lumped coefficients are assembled: literal printed formulas, or re-derived from the
/// blade-element integrals so that the coefficient forms reproduce the integral model.
enum class CoefficientMode { as_published, oracle_consistent };

/// Whether the in-plane rotor inflow is V_x (printed thrust/torque forms) or V_x cos(theta).
enum class FrameMode { as_published, consistent };

/// Inflow angle used inside the blade-element torque integrand.
enum class InflowAngle { small_angle, exact_atan };

std::string_view to_string(CoefficientMode mode);
std::string_view to_string(FrameMode mode);
std::optional<CoefficientMode> parse_coefficient_mode(std::string_view text);
std::optional<FrameMode> parse_frame_mode(std::string_view text);

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct Tolerances {
    double quadrature_rel = 1e-10;
    double root_rel = 1e-12;         ///< bisection/Newton stopping rule for the inflow quartic
    double quartic_residual = 1e-9;  ///< residual relative to the quartic's right-hand side
    double closed_form_rel = 1e-6;   ///< closed form vs numeric root
    double oracle_rel = 1e-8;        ///< coefficient forms vs blade-element integrals
    double closure_rel = 1e-9;       ///< force balance and thrust closure
    double minimizer_xtol = 1e-9;    ///< rad
    double theta_spread = 1e-7;      ///< rad, across masses
    double epm_spread = 1e-8;        ///< relative, EPM*/m across masses
    double vx_spread = 1e-8;         ///< relative, Vx*/sqrt(m) across masses
    double scaling_rel = 1e-9;       ///< fixed-pitch mass scaling laws
};

struct ModelOptions {
    CoefficientMode coefficient_mode = CoefficientMode::oracle_consistent;
    FrameMode frame = FrameMode::consistent;
    double min_pitch_rad = deg_to_rad(0.5); ///< lower end of the optimizer bracket
    double max_pitch_rad = deg_to_rad(60.0);
    int radial_intervals = 1000;
    int azimuth_intervals = 720;
    Tolerances tol;
};

} // namespace epm
