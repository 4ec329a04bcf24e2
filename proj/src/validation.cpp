#include "epm/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "epm/aero.hpp"
#include "epm/errors.hpp"
#include "epm/optimize.hpp"
#include "epm/trim.hpp"

namespace epm {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    }
    return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min()); }

CheckResult make(std::string name, double dev, double tol, std::string detail = {}, bool gating = true) {
    return {std::move(name), dev, tol, dev <= tol, gating, std::move(detail)};
}

void quartic_checks(const VehicleConfig &cfg, const ModelOptions &opts, ValidationReport &rep) {
    const auto thetas = linspace(opts.min_pitch_rad, opts.max_pitch_rad, 50);
    std::vector<double> masses;
    for (int k = -3; k <= 4; ++k) {
        masses.push_back(cfg.dry_mass * std::ldexp(1.0, k));
    }

    double worst_residual = 0.0;
    for (double t : thetas) {
        for (double m : masses) {
            const double vx = velocity_from_pitch(t, m, cfg);
            const auto root = solve_inflow_quartic(m * cfg.env.g / std::cos(t), vx, t, cfg, opts.tol);
            worst_residual = std::max(worst_residual, root.residual_rel);
        }
    }
    rep.checks.push_back(make("quartic_residual", worst_residual, opts.tol.quartic_residual,
                              fmt::format("{}x{} (theta, m) grid", thetas.size(), masses.size())));

    for (auto variant : kClosedFormVariants) {
        double worst = 0.0;
        int validated = 0;
        int inapplicable = 0;
        int total = 0;
        for (double t : thetas) {
            for (double m : masses) {
                ++total;
                try {
                    const auto cf = induced_velocity_closed_form(t, m, cfg, variant, opts.tol);
                    worst = std::max(worst, cf.rel_error);
                    validated += cf.validated ? 1 : 0;
                } catch (const ClosedFormInapplicableError &) {
                    ++inapplicable;
                }
            }
        }
        const bool primary = variant == ClosedFormVariant::ferrari;
        auto c = make(fmt::format("closed_form_{}", to_string(variant)), worst, opts.tol.closed_form_rel,
                      fmt::format("validated {}/{}, inapplicable {}", validated, total, inapplicable), primary);
        if (primary) {
            c.passed = validated > 0 && validated + inapplicable == total;
        } else {
            c.detail += "; printed form, reported for reference";
        }
        rep.checks.push_back(std::move(c));
    }
}

void oracle_check(const VehicleConfig &cfg, const RotorCoefficients &coeffs, const ModelOptions &opts,
                  ValidationReport &rep) {
    const BemtOracle oracle(cfg, opts);
    const double m = cfg.dry_mass;
    const double hover_vi = induced_velocity_numeric(m * cfg.env.g, 0.0, 0.0, cfg, opts.tol);
    const double hover_omega = rotor_speed(0.0, m, hover_vi, cfg, coeffs, opts.frame);

    double worst_t = 0.0;
    double worst_q = 0.0;
    int evaluated = 0;
    int skipped = 0;
    for (double w : linspace(0.8 * hover_omega, 2.5 * hover_omega, 10)) {
        for (double vx : linspace(0.0, velocity_from_pitch(deg_to_rad(45.0), m, cfg), 10)) {
            for (double t : linspace(0.0, deg_to_rad(40.0), 10)) {
                const double vi = induced_velocity_numeric(m * cfg.env.g / std::cos(t), vx, t, cfg, opts.tol);
                const auto consistent = rotor_inflow(vx, t, vi, FrameMode::consistent);
                RotorLoads ref;
                try {
                    ref = oracle(w, consistent.vx_inplane, consistent.upr);
                } catch (const OracleDomainError &) {
                    ++skipped;
                    continue;
                }
                ++evaluated;
                worst_t = std::max(worst_t, rel(thrust_coefficient_form(w, vx, t, vi, coeffs, opts.frame), ref.thrust));
                worst_q = std::max(worst_q, rel(torque_coefficient_form(w, vx, t, vi, coeffs, opts.frame), ref.torque));
            }
        }
    }
    const auto detail = fmt::format("{} points, {} reverse-flow skipped; coefficient_mode={}, frame={}", evaluated,
                                    skipped, to_string(coeffs.mode), to_string(opts.frame));
    rep.checks.push_back(make("coefficient_form_vs_bemt_thrust", worst_t, opts.tol.oracle_rel, detail));
    rep.checks.push_back(make("coefficient_form_vs_bemt_torque", worst_q, opts.tol.oracle_rel, detail));
}

void trim_checks(const VehicleConfig &cfg, const RotorCoefficients &coeffs, const ModelOptions &opts,
                 ValidationReport &rep) {
    const double g = cfg.env.g;
    double closure = 0.0;
    double balance = 0.0;
    for (double t : linspace(opts.min_pitch_rad, opts.max_pitch_rad, 25)) {
        for (double m : {0.5 * cfg.dry_mass, cfg.dry_mass, 4.0 * cfg.dry_mass}) {
            const auto s = trim_state(t, m, cfg, coeffs, opts);
            const double target = m * g / std::cos(t);
            closure = std::max(closure, rel(thrust_coefficient_form(s.omega, s.vx, t, s.vi, coeffs, opts.frame), target));
            balance = std::max(balance, rel(s.thrust * std::cos(t), m * g));
            balance = std::max(balance, rel(cfg.body_drag * s.vx * s.vx, s.thrust * std::sin(t)));
        }
    }
    rep.checks.push_back(make("thrust_closure", closure, opts.tol.closure_rel));
    rep.checks.push_back(make("force_balance", balance, opts.tol.closure_rel));

    double scaling = 0.0;
    for (double deg : {5.0, 15.0, 30.0}) {
        const double t = deg_to_rad(deg);
        const auto base = trim_state(t, cfg.dry_mass, cfg, coeffs, opts);
        for (double k : {2.0, 4.0, 8.0}) {
            const auto s = trim_state(t, k * cfg.dry_mass, cfg, coeffs, opts);
            const double sq = std::sqrt(k);
            for (auto [a, b] : {std::pair{s.vx, sq * base.vx}, {s.vi, sq * base.vi}, {s.omega, sq * base.omega},
                                {s.thrust, k * base.thrust}, {s.torque, k * base.torque}, {s.epm, k * base.epm}}) {
                scaling = std::max(scaling, rel(a, b));
            }
        }
    }
    rep.checks.push_back(make("fixed_pitch_mass_scaling", scaling, opts.tol.scaling_rel,
                              "Vx, vi, omega ~ sqrt(m); T, Q, EPM ~ m"));
}

void optimum_checks(const VehicleConfig &cfg, const RotorCoefficients &coeffs, const ModelOptions &opts,
                    ValidationReport &rep) {
    const double m = cfg.dry_mass;
    const double masses[] = {m, 2 * m, 4 * m, 8 * m};
    const double thetas[] = {opts.min_pitch_rad};
    const auto study = mass_scaling_study(masses, thetas, cfg, coeffs, opts);
    rep.checks.push_back(make("invariance_theta_star", study.invariance.theta_spread, opts.tol.theta_spread,
                              fmt::format("theta* = {:.9f} deg", rad_to_deg(study.optima.front().theta_star))));
    rep.checks.push_back(make("invariance_epm_per_mass", study.invariance.epm_per_mass_spread, opts.tol.epm_spread,
                              fmt::format("C = {:.12g} J/(m kg)", study.optima.front().C)));
    rep.checks.push_back(make("invariance_vx_per_sqrt_mass", study.invariance.vx_per_sqrt_mass_spread,
                              opts.tol.vx_spread));

    const auto &o = study.optima.front();
    const double slope = std::abs(o.meta.fd_slope) / o.epm_at_mass;
    auto c = make("optimum_stationarity", slope, 1e-4,
                  fmt::format("interior={}, curvature={:.6g}", o.meta.interior, o.meta.fd_curvature));
    c.passed = c.passed && o.meta.interior && o.meta.fd_curvature > 0.0;
    rep.checks.push_back(std::move(c));
}

} // namespace

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return !c.gating || c.passed; });
}

ValidationReport run_validation(const VehicleConfig &cfg, const ModelOptions &opts) {
    require_valid(cfg);
    const auto coeffs = rotor_coefficients(cfg, opts);
    ValidationReport rep;
    quartic_checks(cfg, opts, rep);
    oracle_check(cfg, coeffs, opts, rep);
    trim_checks(cfg, coeffs, opts, rep);
    optimum_checks(cfg, coeffs, opts, rep);
    return rep;
}

} // namespace epm
