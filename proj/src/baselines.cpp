#include "epm/baselines.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "epm/errors.hpp"
#include "epm/optimize.hpp"
#include "epm/trim.hpp"

namespace epm {

std::vector<Violation> validate_baseline(const BaselineParams &bp) {
    std::vector<Violation> out;
    if (!(bp.eta > 0.0 && bp.eta <= 1.0)) {
        out.push_back({"eta", "eta in (0, 1]"});
    }
    if (!(bp.spin_area > 0.0)) {
        out.push_back({"spin_area", "zeta > 0"});
    }
    if (bp.rotor_count < 1) {
        out.push_back({"rotor_count", "n >= 1"});
    }
    if (bp.lift_to_drag.empty()) {
        out.push_back({"lift_to_drag", "table has no samples"});
    }
    for (double r : bp.lift_to_drag.values()) {
        if (!(r > 0.0)) {
            out.push_back({"lift_to_drag", "r(Vx) > 0"});
            break;
        }
    }
    const auto v = bp.lift_to_drag.abscissae();
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) {
            out.push_back({"lift_to_drag", "Vx samples strictly increasing"});
            break;
        }
    }
    return out;
}

double epm_lift_drag(double mass, double vx, const BaselineParams &bp) {
    if (bp.lift_to_drag.empty() || vx < bp.lift_to_drag.front() || vx > bp.lift_to_drag.back()) {
        throw DomainError("Vx outside the lift-to-drag table");
    }
    return mass * bp.g / (bp.lift_to_drag(vx) * bp.eta);
}

double epm_hover_model(std::span<const double> component_masses, double vx, const BaselineParams &bp,
                       double rho) {
    if (!(vx > 0.0)) {
        throw DomainError("hover-model EPM requires Vx > 0");
    }
    const double total = std::accumulate(component_masses.begin(), component_masses.end(), 0.0);
    return std::pow(bp.g * total, 1.5) / (bp.eta * vx * std::sqrt(2.0 * bp.rotor_count * rho * bp.spin_area));
}

std::string_view to_string(Axis a) { return a == Axis::fixed_vx ? "fixed_vx" : "fixed_theta"; }

std::string_view to_string(BaselineModel m) {
    switch (m) {
    case BaselineModel::physics:
        return "physics";
    case BaselineModel::lift_drag:
        return "lift_drag";
    case BaselineModel::hover:
        return "hover";
    }
    return "unknown";
}

namespace {

// EPM for one model at one mass; vx is the velocity the model is evaluated at.
double model_epm(BaselineModel model, double mass, double vx, double theta, const VehicleConfig &cfg,
                 const RotorCoefficients &coeffs, const BaselineParams &bp, const ModelOptions &opts) {
    switch (model) {
    case BaselineModel::physics:
        return trim_state(theta, mass, cfg, coeffs, opts).epm;
    case BaselineModel::lift_drag:
        return epm_lift_drag(mass, vx, bp);
    case BaselineModel::hover: {
        const double m[] = {mass};
        return epm_hover_model(m, vx, bp, cfg.env.rho);
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

DivergenceRow evaluate_row(Axis axis, double value, BaselineModel model, std::span<const double> masses,
                           const VehicleConfig &cfg, const RotorCoefficients &coeffs, const BaselineParams &bp,
                           const ModelOptions &opts) {
    DivergenceRow row;
    row.axis = axis;
    row.axis_value = value;
    row.model = model;
    row.native_exponent = model == BaselineModel::hover ? 1.5 : 1.0;
    std::vector<double> per_mass, native;
    try {
        for (double m : masses) {
            const double theta = axis == Axis::fixed_theta ? value : pitch_from_velocity(value, m, cfg);
            const double vx = axis == Axis::fixed_vx ? value : velocity_from_pitch(value, m, cfg);
            const double e = model_epm(model, m, vx, theta, cfg, coeffs, bp, opts);
            per_mass.push_back(e / m);
            native.push_back(e / std::pow(m, row.native_exponent));
        }
        row.spread_epm_per_mass = relative_spread(per_mass);
        row.spread_native = relative_spread(native);
    } catch (const Error &e) {
        row.status = std::string("undefined: ") + e.what();
        row.spread_epm_per_mass = std::numeric_limits<double>::quiet_NaN();
        row.spread_native = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

} // namespace

DivergenceReport divergence_report(const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                                   const BaselineParams &bp, std::span<const double> masses,
                                   std::span<const double> vx_grid, std::span<const double> theta_grid,
                                   const ModelOptions &opts) {
    if (masses.empty()) {
        throw DomainError("divergence report needs at least one mass");
    }
    require_valid(cfg);
    if (const auto v = validate_baseline(bp); !v.empty()) {
        throw DomainError("invalid baseline parameters: " + v.front().field + " violates " + v.front().rule);
    }
    constexpr BaselineModel models[] = {BaselineModel::physics, BaselineModel::lift_drag, BaselineModel::hover};
    DivergenceReport report;
    report.masses.assign(masses.begin(), masses.end());
    for (double vx : vx_grid) {
        for (auto model : models) {
            report.rows.push_back(evaluate_row(Axis::fixed_vx, vx, model, masses, cfg, coeffs, bp, opts));
        }
    }
    for (double theta : theta_grid) {
        for (auto model : models) {
            report.rows.push_back(evaluate_row(Axis::fixed_theta, theta, model, masses, cfg, coeffs, bp, opts));
        }
    }
    return report;
}

} // namespace epm
