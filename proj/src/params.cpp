#include "epm/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "epm/errors.hpp"

namespace epm {

namespace {

void check_profile(const quad::PiecewiseLinear &p, const std::string &name, const BladeGeometry &b,
                   std::vector<Violation> &out) {
    if (p.empty()) {
        out.push_back({"blade." + name, "profile has no samples"});
        return;
    }
    const auto r = p.abscissae();
    if (p.front() > b.root_radius || p.back() < b.tip_radius) {
        out.push_back({"blade." + name, "samples cover [R0, R]"});
    }
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!(r[i] > r[i - 1])) {
            out.push_back({"blade." + name, "sample radii strictly increasing"});
            break;
        }
    }
}

// Integrals of the blade profile that every coefficient is built from.
struct BladeIntegrals {
    double r2_c_theta = 0.0;
    double c_theta = 0.0;
    double r_c = 0.0;
    double r3_c = 0.0;
};

BladeIntegrals blade_integrals(const BladeGeometry &b, double upper, const ModelOptions &opts) {
    const auto breaks = profile_breakpoints(b);
    const int n = opts.radial_intervals;
    const double tol = opts.tol.quadrature_rel;
    const double lo = b.root_radius;
    const auto &c = b.chord;
    const auto &th = b.twist;

    BladeIntegrals I;
    I.r2_c_theta = quad::integrate([&](double r) { return r * r * c(r) * th(r); }, lo, upper, breaks,
                                   n, tol, "int r^2 c theta dr");
    I.c_theta = quad::integrate([&](double r) { return c(r) * th(r); }, lo, upper, breaks, n, tol,
                                "int c theta dr");
    I.r_c = quad::integrate([&](double r) { return r * c(r); }, lo, upper, breaks, n, tol,
                            "int r c dr");
    I.r3_c = quad::integrate([&](double r) { return r * r * r * c(r); }, lo, upper, breaks, n, tol,
                             "int r^3 c dr");
    return I;
}

double lift_prefactor(const VehicleConfig &cfg) {
    return cfg.propellers * cfg.blade.blades * cfg.env.rho * cfg.blade.lift_slope / 2.0;
}

double drag_prefactor(const VehicleConfig &cfg) {
    return cfg.propellers * cfg.blade.blades * cfg.env.rho * cfg.blade.drag_coeff;
}

} // namespace

std::vector<Violation> validate_config(const VehicleConfig &cfg) {
    std::vector<Violation> out;
    const auto &b = cfg.blade;
    if (!(cfg.env.rho > 0)) {
        out.push_back({"environment.rho", "rho > 0"});
    }
    if (!(cfg.env.g > 0)) {
        out.push_back({"environment.g", "g > 0"});
    }
    if (!(b.root_radius >= 0)) {
        out.push_back({"blade.R0", "R0 >= 0"});
    }
    if (!(b.root_radius < b.tip_radius)) {
        out.push_back({"blade.R0", "R0 < R"});
    }
    if (b.blades < 2) {
        out.push_back({"blade.Nb", "Nb >= 2"});
    }
    if (!(b.lift_slope > 0)) {
        out.push_back({"blade.a", "a > 0"});
    }
    if (!(b.drag_coeff >= 0)) {
        out.push_back({"blade.cd", "cd >= 0"});
    }
    check_profile(b.chord, "chord", b, out);
    check_profile(b.twist, "twist", b, out);
    for (double c : b.chord.values()) {
        if (!(c > 0)) {
            out.push_back({"blade.chord", "chord > 0"});
            break;
        }
    }
    for (double t : b.twist.values()) {
        if (!(t > 0 && t < std::numbers::pi / 2)) {
            out.push_back({"blade.twist", "twist in (0, pi/2)"});
            break;
        }
    }
    if (cfg.propellers < 1) {
        out.push_back({"vehicle.Np", "Np >= 1"});
    }
    if (!(cfg.dry_mass > 0)) {
        out.push_back({"vehicle.mv", "mv > 0"});
    }
    if (!(cfg.body_drag > 0)) {
        out.push_back({"vehicle.Cbd", "Cbd > 0"});
    }
    return out;
}

void require_valid(const VehicleConfig &cfg) {
    const auto v = validate_config(cfg);
    if (!v.empty()) {
        throw DomainError("invalid vehicle configuration: " + v.front().field + " violates " +
                          v.front().rule);
    }
}

std::vector<double> profile_breakpoints(const BladeGeometry &blade) {
    std::vector<double> out(blade.chord.abscissae().begin(), blade.chord.abscissae().end());
    out.insert(out.end(), blade.twist.abscissae().begin(), blade.twist.abscissae().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double disk_area(const VehicleConfig &cfg) {
    return std::numbers::pi * cfg.blade.tip_radius * cfg.blade.tip_radius;
}

ThrustCoefficients thrust_coefficients(const VehicleConfig &cfg, const ModelOptions &opts) {
    require_valid(cfg);
    const auto I = blade_integrals(cfg.blade, kTipLossFraction * cfg.blade.tip_radius, opts);
    const double k = lift_prefactor(cfg);
    return {k * I.r2_c_theta, k * I.c_theta, k * I.r_c};
}

TorqueCoefficients torque_coefficients(const VehicleConfig &cfg, CoefficientMode mode,
                                       const ModelOptions &opts) {
    require_valid(cfg);
    const auto full = blade_integrals(cfg.blade, cfg.blade.tip_radius, opts);
    const double kl = lift_prefactor(cfg);
    const double kd = drag_prefactor(cfg);

    TorqueCoefficients q;
    q.mode = mode;
    q.cq1 = kd / 2.0 * full.r3_c;
    if (mode == CoefficientMode::oracle_consistent) {
        q.cq2 = kd / 4.0 * full.r_c;
        q.cq3 = kl * full.r2_c_theta;
        q.cq4 = kl * full.r_c;
    } else {
        // Printed form: the B_T symbols already carry the lift prefactor.
        const auto bt = thrust_coefficients(cfg, opts);
        q.cq2 = kd / 4.0 * bt.bt3;
        q.cq3 = kl * bt.bt1;
        q.cq4 = 2.0 * q.cq2;
    }
    return q;
}

RotorCoefficients rotor_coefficients(const VehicleConfig &cfg, CoefficientMode mode,
                                     const ModelOptions &opts) {
    const auto t = thrust_coefficients(cfg, opts);
    const auto q = torque_coefficients(cfg, mode, opts);
    return {t.bt1, t.bt2, t.bt3, q.cq1, q.cq2, q.cq3, q.cq4, mode};
}

} // namespace epm
