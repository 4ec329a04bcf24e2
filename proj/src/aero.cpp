#include "epm/aero.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "epm/errors.hpp"

namespace epm {

namespace {

constexpr double kPi = std::numbers::pi;

// (T_total / (2 Np rho pi R^2))^2
double quartic_rhs(double thrust_total, const VehicleConfig &cfg) {
    const double per_disk = thrust_total / (2.0 * cfg.propellers * cfg.env.rho * disk_area(cfg));
    return per_disk * per_disk;
}

double quartic_lhs(double v, double vx, double s) { return v * v * (v * v + 2.0 * vx * s * v + vx * vx); }

double checked_sqrt(double x, const char *what) {
    if (!(x >= 0.0)) {
        throw ClosedFormInapplicableError(std::string("negative radicand in ") + what);
    }
    return std::sqrt(x);
}

} // namespace

InflowState rotor_inflow(double vx, double theta, double vi, FrameMode frame) {
    const double inplane = frame == FrameMode::consistent ? vx * std::cos(theta) : vx;
    return {inplane, vx * std::sin(theta) + vi};
}

double inflow_quartic_residual(double vi, double thrust_total, double vx, double theta,
                               const VehicleConfig &cfg) {
    return quartic_lhs(vi, vx, std::sin(theta)) - quartic_rhs(thrust_total, cfg);
}

QuarticRoot solve_inflow_quartic(double thrust_total, double vx, double theta,
                                 const VehicleConfig &cfg, const Tolerances &tol) {
    if (!(thrust_total > 0.0) || !std::isfinite(thrust_total)) {
        throw DomainError("induced velocity requires positive thrust");
    }
    if (!(vx >= 0.0)) {
        throw DomainError("induced velocity requires Vx >= 0");
    }
    if (!(theta >= 0.0 && theta < kPi / 2)) {
        throw DomainError("induced velocity requires theta in [0, pi/2)");
    }

    const double rhs = quartic_rhs(thrust_total, cfg);
    const double s = std::sin(theta);
    auto f = [&](double v) { return quartic_lhs(v, vx, s) - rhs; };
    auto df = [&](double v) { return 4.0 * v * v * v + 6.0 * vx * s * v * v + 2.0 * vx * vx * v; };

    const double v_hover = std::sqrt(std::sqrt(rhs));
    double lo = 0.0;
    double hi = 10.0 * v_hover;
    if (!(f(lo) < 0.0 && f(hi) > 0.0)) {
        throw DomainError("inflow quartic bracket has no sign change");
    }

    QuarticRoot out;
    while (hi - lo > 1e-6 * hi && out.bisection_steps < 200) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
        ++out.bisection_steps;
    }

    double v = 0.5 * (lo + hi);
    for (int k = 0; k < 50; ++k) {
        const double fv = f(v);
        if (fv == 0.0) {
            break;
        }
        (fv < 0.0 ? lo : hi) = v;
        double next = v - fv / df(v);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        ++out.newton_steps;
        const double step = std::abs(next - v);
        v = next;
        if (step <= tol.root_rel * v) {
            break;
        }
    }
    out.vi = v;
    out.residual_rel = std::abs(f(v)) / rhs;
    return out;
}

std::string_view to_string(ClosedFormVariant v) {
    switch (v) {
    case ClosedFormVariant::ferrari:
        return "ferrari";
    case ClosedFormVariant::typeset_main:
        return "typeset_main";
    case ClosedFormVariant::typeset_alternate:
        return "typeset_alternate";
    }
    return "unknown";
}

ResolventChain resolvent_chain(double theta, const VehicleConfig &cfg, ClosedFormVariant variant) {
    if (!(theta > 0.0 && theta < kPi / 2)) {
        throw DomainError("closed-form inflow requires theta in (0, pi/2)");
    }
    const double s = std::sin(theta);
    const double cos2 = 1.0 - s * s;
    const double k2_root = cfg.body_drag / (2.0 * cfg.propellers * cfg.env.rho * disk_area(cfg));

    // Normalized quartic in x = vi / Vx: a = 1, b = 2s, c = 1, d = 0, e = -K2 / s^2.
    ResolventChain ch;
    ch.k2 = k2_root * k2_root;
    const double b = 2.0 * s;
    const double c = 1.0;
    const double e = -ch.k2 / (s * s);
    ch.p = c - 3.0 * b * b / 8.0;
    ch.q = b * b * b / 8.0 - b * c / 2.0;
    ch.delta0 = c * c + 12.0 * e;
    ch.delta1 = 2.0 * c * c * c + 27.0 * b * b * e - 72.0 * c * e;

    const double disc = checked_sqrt(ch.delta1 * ch.delta1 - 4.0 * ch.delta0 * ch.delta0 * ch.delta0,
                                     "Delta1^2 - 4 Delta0^3");
    ch.s1 = std::cbrt(0.5 * (ch.delta1 + disc));
    if (ch.s1 == 0.0) {
        throw ClosedFormInapplicableError("degenerate resolvent (S1 = 0)");
    }
    ch.s2 = 0.5 * checked_sqrt(-2.0 * ch.p / 3.0 + (ch.s1 + ch.delta0 / ch.s1) / 3.0, "S2");
    if (std::abs(ch.s2) < 1e-12) {
        throw ClosedFormInapplicableError("degenerate resolvent (S2' = 0)");
    }

    const double S = ch.s2;
    switch (variant) {
    case ClosedFormVariant::ferrari:
        ch.x = -b / 4.0 + S + 0.5 * checked_sqrt(-4.0 * S * S - 2.0 * ch.p - ch.q / S, "outer root");
        break;
    case ClosedFormVariant::typeset_alternate:
    case ClosedFormVariant::typeset_main:
        // Both printed lines share this bracket; they differ only in how sqrt(g tan / Cbd)
        // multiplies it, which induced_velocity_closed_form applies.
        ch.x = s / 2.0 + S +
               checked_sqrt(-S * S / 4.0 + (3.0 * s * s - 2.0) / 16.0 + s * cos2 / (16.0 * S),
                            "outer root");
        break;
    }
    return ch;
}

ClosedFormInflow induced_velocity_closed_form(double theta, double mass, const VehicleConfig &cfg,
                                              ClosedFormVariant variant, const Tolerances &tol) {
    if (!(mass > 0.0)) {
        throw DomainError("closed-form inflow requires m > 0");
    }
    if (!(theta >= 0.0 && theta < kPi / 2)) {
        throw DomainError("closed-form inflow requires theta in [0, pi/2)");
    }
    const double g = cfg.env.g;
    const double thrust = mass * g / std::cos(theta);
    const double vx = std::sqrt(mass * g * std::tan(theta) / cfg.body_drag);

    ClosedFormInflow out;
    out.numeric_vi = induced_velocity_numeric(thrust, vx, theta, cfg, tol);
    if (theta == 0.0) {
        out.hover_limit = true;
        out.vi = std::sqrt(std::sqrt(quartic_rhs(thrust, cfg)));
    } else {
        const auto ch = resolvent_chain(theta, cfg, variant);
        if (variant == ClosedFormVariant::typeset_main) {
            const double s = std::sin(theta);
            const double cos2 = 1.0 - s * s;
            const double S = ch.s2;
            const double first = checked_sqrt(g / cfg.body_drag * std::tan(theta) * (s / 2.0 + S), "typeset first radicand");
            const double second =
                checked_sqrt(-S * S / 4.0 + (3.0 * s * s - 2.0) / 16.0 + s * cos2 / (16.0 * S), "typeset second radicand");
            out.vi = std::sqrt(mass) * (first + second);
        } else {
            out.vi = vx * ch.x;
        }
    }
    out.rel_error = std::abs(out.vi - out.numeric_vi) / out.numeric_vi;
    out.validated = out.rel_error <= tol.closed_form_rel;
    return out;
}

double thrust_coefficient_form(double omega, double vx, double theta, double vi,
                               const RotorCoefficients &c, FrameMode frame) {
    const auto in = rotor_inflow(vx, theta, vi, frame);
    return c.bt1 * omega * omega + c.bt2 * in.vx_inplane * in.vx_inplane / 2.0 - c.bt3 * omega * in.upr;
}

double torque_coefficient_form(double omega, double vx, double theta, double vi,
                               const RotorCoefficients &c, FrameMode frame) {
    const auto in = rotor_inflow(vx, theta, vi, frame);
    return c.cq1 * omega * omega + c.cq2 * in.vx_inplane * in.vx_inplane + c.cq3 * in.upr * omega -
           c.cq4 * in.upr * in.upr;
}

BemtOracle::BemtOracle(const VehicleConfig &cfg, const ModelOptions &opts, InflowAngle angle)
    : cfg_(cfg), opts_(opts), angle_(angle) {
    require_valid(cfg_);
    const double R = cfg_.blade.tip_radius;
    thrust_fine_ = make_grid(kTipLossFraction * R, opts.radial_intervals, opts.azimuth_intervals);
    torque_fine_ = make_grid(R, opts.radial_intervals, opts.azimuth_intervals);
    thrust_coarse_ = make_grid(kTipLossFraction * R, opts.radial_intervals / 2, opts.azimuth_intervals / 2);
    torque_coarse_ = make_grid(R, opts.radial_intervals / 2, opts.azimuth_intervals / 2);
    if (torque_coarse_.r.size() == torque_fine_.r.size() || thrust_coarse_.r.size() == thrust_fine_.r.size() ||
        torque_coarse_.sin_psi.size() == torque_fine_.sin_psi.size()) {
        throw QuadratureError("blade-element oracle grid cannot be halved for the convergence check");
    }
}

BemtOracle::Grid BemtOracle::make_grid(double upper, int radial, int azimuth) const {
    if (radial < 2 || azimuth < 2) {
        throw QuadratureError("blade-element oracle grid too coarse");
    }
    const auto breaks = profile_breakpoints(cfg_.blade);
    const auto rr = quad::simpson_rule(cfg_.blade.root_radius, upper, breaks, radial);
    const auto rp = quad::simpson_rule(0.0, 2.0 * kPi, azimuth);
    Grid g;
    g.r = rr.nodes;
    g.wr = rr.weights;
    for (double r : g.r) {
        g.chord.push_back(cfg_.blade.chord(r));
        g.twist.push_back(cfg_.blade.twist(r));
    }
    for (double psi : rp.nodes) {
        g.sin_psi.push_back(std::sin(psi));
    }
    g.wpsi = rp.weights;
    return g;
}

BemtOracle::Sums BemtOracle::integrate(const Grid &tg, const Grid &qg, double omega, double vx,
                                       double upr) const {
    const double nb = cfg_.blade.blades;
    const double rho = cfg_.env.rho;
    const double a = cfg_.blade.lift_slope;
    const double cd = cfg_.blade.drag_coeff;
    const bool exact = angle_ == InflowAngle::exact_atan;

    auto sweep = [&](const Grid &g, bool torque) {
        quad::Estimate total;
        for (std::size_t i = 0; i < g.r.size(); ++i) {
            const double r = g.r[i];
            const double c = g.chord[i];
            const double th = g.twist[i];
            double ring = 0.0;
            double ring_abs = 0.0;
            for (std::size_t j = 0; j < g.sin_psi.size(); ++j) {
                const double upl = omega * r + vx * g.sin_psi[j];
                const double ratio = upr / upl;
                const double phi = exact ? std::atan(ratio) : ratio;
                const double f = torque ? 0.5 * nb * r * rho * upl * upl * c * (phi * a * (th - phi) + cd)
                                        : 0.5 * nb * rho * upl * upl * c * a * (th - phi);
                ring += g.wpsi[j] * f;
                ring_abs += g.wpsi[j] * std::abs(f);
            }
            total.value += g.wr[i] * ring;
            total.magnitude += g.wr[i] * ring_abs;
        }
        const double scale = cfg_.propellers / (2.0 * kPi);
        total.value *= scale;
        total.magnitude *= scale;
        return total;
    };
    return {sweep(tg, false), sweep(qg, true)};
}

RotorLoads BemtOracle::operator()(double omega, double vx_inplane, double upr) const {
    if (!(omega > 0.0)) {
        throw DomainError("blade-element oracle requires omega > 0");
    }
    if (!(omega * cfg_.blade.root_radius - std::abs(vx_inplane) > 0.0)) {
        throw OracleDomainError("reverse flow: u_pl <= 0 on the integration domain");
    }
    const auto fine = integrate(thrust_fine_, torque_fine_, omega, vx_inplane, upr);
    const auto coarse = integrate(thrust_coarse_, torque_coarse_, omega, vx_inplane, upr);
    quad::check_converged(fine.thrust, coarse.thrust, opts_.tol.quadrature_rel, "oracle thrust");
    quad::check_converged(fine.torque, coarse.torque, opts_.tol.quadrature_rel, "oracle torque");
    return {fine.thrust.value, fine.torque.value};
}

} // namespace epm
