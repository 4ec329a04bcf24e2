#include "epm/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "epm/aero.hpp"
#include "epm/baselines.hpp"
#include "epm/config_io.hpp"
#include "epm/csv.hpp"
#include "epm/errors.hpp"
#include "epm/optimize.hpp"
#include "epm/routing.hpp"
#include "epm/svg.hpp"
#include "epm/trim.hpp"
#include "epm/validation.hpp"

#ifndef EPM_VERSION
#define EPM_VERSION "0.0.0"
#endif

namespace epm::cli {

namespace {

using json = nlohmann::ordered_json;
using csv::number;

/// Usage problem detected after CLI11 parsing (bad grid, inconsistent flags, ...).
class InputError : public Error {
  public:
    using Error::Error;
};

struct TolFlags {
    std::optional<double> quadrature, root, quartic, closed_form, oracle, closure, minimizer, theta_spread,
        epm_spread, vx_spread, scaling;

    void add(CLI::App &app) {
        app.add_option("--tol-quadrature", quadrature, "relative quadrature convergence tolerance");
        app.add_option("--tol-root", root, "inflow root stopping tolerance (relative)");
        app.add_option("--tol-quartic", quartic, "inflow quartic residual tolerance (relative)");
        app.add_option("--tol-closed-form", closed_form, "closed-form vs numeric inflow tolerance (relative)");
        app.add_option("--tol-oracle", oracle, "coefficient form vs blade-element integral tolerance (relative)");
        app.add_option("--tol-closure", closure, "force-balance / thrust closure tolerance (relative)");
        app.add_option("--tol-minimizer", minimizer, "optimal pitch bracket tolerance [rad]");
        app.add_option("--tol-theta-spread", theta_spread, "allowed theta* spread across masses [rad]");
        app.add_option("--tol-epm-spread", epm_spread, "allowed EPM*/m spread across masses (relative)");
        app.add_option("--tol-vx-spread", vx_spread, "allowed Vx*/sqrt(m) spread across masses (relative)");
        app.add_option("--tol-scaling", scaling, "fixed-pitch mass-scaling tolerance (relative)");
    }

    void apply(Tolerances &t) const {
        auto set = [](double &dst, const std::optional<double> &v) {
            if (v) {
                dst = *v;
            }
        };
        set(t.quadrature_rel, quadrature);
        set(t.root_rel, root);
        set(t.quartic_residual, quartic);
        set(t.closed_form_rel, closed_form);
        set(t.oracle_rel, oracle);
        set(t.closure_rel, closure);
        set(t.minimizer_xtol, minimizer);
        set(t.theta_spread, theta_spread);
        set(t.epm_spread, epm_spread);
        set(t.vx_spread, vx_spread);
        set(t.scaling_rel, scaling);
    }
};

json tolerances_json(const Tolerances &t) {
    return json{{"quadrature_rel", t.quadrature_rel},     {"root_rel", t.root_rel},
                {"quartic_residual", t.quartic_residual}, {"closed_form_rel", t.closed_form_rel},
                {"oracle_rel", t.oracle_rel},             {"closure_rel", t.closure_rel},
                {"minimizer_xtol", t.minimizer_xtol},     {"theta_spread", t.theta_spread},
                {"epm_spread", t.epm_spread},             {"vx_spread", t.vx_spread},
                {"scaling_rel", t.scaling_rel}};
}

json vehicle_json(const VehicleConfig &c) {
    auto table = [](const quad::PiecewiseLinear &p) {
        return json{{"r", std::vector<double>(p.abscissae().begin(), p.abscissae().end())},
                    {"value", std::vector<double>(p.values().begin(), p.values().end())}};
    };
    return json{{"environment", {{"rho", c.env.rho}, {"g", c.env.g}}},
                {"vehicle", {{"propellers", c.propellers}, {"dry_mass", c.dry_mass}, {"body_drag", c.body_drag}}},
                {"blade",
                 {{"tip_radius", c.blade.tip_radius},
                  {"root_radius", c.blade.root_radius},
                  {"blades", c.blade.blades},
                  {"lift_slope", c.blade.lift_slope},
                  {"drag_coeff", c.blade.drag_coeff},
                  {"chord", table(c.blade.chord)},
                  {"twist", table(c.blade.twist)}}}};
}

/// Command context shared by all subcommands.
struct Context {
    std::ostream &out;
    std::ostream &err;
    std::string command;
    std::string config_path;
    std::string mode;
    std::string frame;
    std::string out_path;
    TolFlags tol;

    json manifest_params = json::object();
    std::vector<std::string> inputs;

    VehicleFile load() {
        if (config_path.empty()) {
            throw InputError("--config is required");
        }
        auto vf = load_vehicle_config(config_path);
        inputs.push_back(config_path);
        if (!mode.empty()) {
            const auto m = parse_coefficient_mode(mode);
            if (!m) {
                throw InputError("--mode must be as_published or oracle_consistent");
            }
            vf.options.coefficient_mode = *m;
        }
        if (!frame.empty()) {
            const auto f = parse_frame_mode(frame);
            if (!f) {
                throw InputError("--frame must be consistent or as_published");
            }
            vf.options.frame = *f;
        }
        tol.apply(vf.options.tol);
        if (const auto v = validate_config(vf.vehicle); !v.empty()) {
            std::string msg = config_path + ": invalid configuration:";
            for (const auto &x : v) {
                msg += "\n  " + x.field + ": " + x.rule;
            }
            throw InputError(msg);
        }
        manifest_params["vehicle"] = vehicle_json(vf.vehicle);
        manifest_params["model"] = {{"coefficient_mode", to_string(vf.options.coefficient_mode)},
                                    {"frame", to_string(vf.options.frame)},
                                    {"min_pitch_deg", rad_to_deg(vf.options.min_pitch_rad)},
                                    {"max_pitch_deg", rad_to_deg(vf.options.max_pitch_rad)},
                                    {"radial_intervals", vf.options.radial_intervals},
                                    {"azimuth_intervals", vf.options.azimuth_intervals}};
        manifest_params["tolerances"] = tolerances_json(vf.options.tol);
        return vf;
    }

    /// Writes the payload to --out (plus manifest) or to stdout.
    void emit(const std::string &payload) {
        if (out_path.empty()) {
            out << payload;
            return;
        }
        write_file(out_path, payload);
        json m{{"tool", "epm"},
               {"version", EPM_VERSION},
               {"command", command},
               {"inputs", inputs},
               {"output", out_path},
               {"parameters", manifest_params}};
        write_file(out_path + ".manifest.json", m.dump(2) + "\n");
    }

    static void write_file(const std::string &path, const std::string &payload) {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw InputError("cannot write " + path);
        }
        f << payload;
    }
};

std::vector<double> masses_or_default(const std::string &spec, const VehicleConfig &cfg) {
    if (spec.empty()) {
        return {cfg.dry_mass};
    }
    const auto m = parse_list(spec);
    for (double x : m) {
        if (!(x > 0)) {
            throw InputError("--masses entries must be positive");
        }
    }
    return m;
}

std::vector<double> theta_grid_rad(const std::string &spec, const ModelOptions &opts) {
    std::vector<double> out;
    for (double deg : parse_grid(spec)) {
        if (!(deg > 0.0) || deg_to_rad(deg) > opts.max_pitch_rad * (1 + 1e-12)) {
            throw InputError(fmt::format("--theta-grid values must lie in (0, {}] degrees",
                                         rad_to_deg(opts.max_pitch_rad)));
        }
        out.push_back(deg_to_rad(deg));
    }
    return out;
}

std::vector<double> vx_grid(const std::string &spec) {
    auto v = parse_grid(spec);
    for (double x : v) {
        if (!(x > 0.0)) {
            throw InputError("--vx-grid values must be positive");
        }
    }
    return v;
}

// ---------------------------------------------------------------------------------------------

int cmd_coeffs(Context &ctx) {
    const auto vf = ctx.load();
    const auto cons = rotor_coefficients(vf.vehicle, CoefficientMode::oracle_consistent, vf.options);
    const auto pub = rotor_coefficients(vf.vehicle, CoefficientMode::as_published, vf.options);
    std::ostringstream os;
    csv::write_row(os, {"coefficient", "oracle_consistent", "as_published", "relative_discrepancy"});
    const std::pair<const char *, double RotorCoefficients::*> rows[] = {
        {"BT1", &RotorCoefficients::bt1}, {"BT2", &RotorCoefficients::bt2}, {"BT3", &RotorCoefficients::bt3},
        {"CQ1", &RotorCoefficients::cq1}, {"CQ2", &RotorCoefficients::cq2}, {"CQ3", &RotorCoefficients::cq3},
        {"CQ4", &RotorCoefficients::cq4}};
    for (const auto &[name, member] : rows) {
        const double a = cons.*member;
        const double b = pub.*member;
        const double d = a == b ? 0.0 : std::abs(b - a) / std::abs(a);
        csv::write_row(os, {name, number(a), number(b), number(d)});
    }
    ctx.emit(os.str());
    return kOk;
}

std::string sweep_svg(const std::vector<SweepRow> &rows) {
    svg::Panel epm{"EPM vs horizontal velocity", "Vx [m/s]", "EPM [J/m]", {}};
    svg::Panel per_mass{"EPM per unit mass", "Vx [m/s]", "EPM/m [J/(m kg)]", {}};
    svg::Panel pitch{"Pitch angle vs horizontal velocity", "Vx [m/s]", "theta [deg]", {}};
    double current = std::numeric_limits<double>::quiet_NaN();
    for (const auto &r : rows) {
        if (r.mass != current) {
            current = r.mass;
            const auto label = fmt::format("m = {:g} kg", r.mass);
            epm.series.push_back({label, {}, {}});
            per_mass.series.push_back({label, {}, {}});
            pitch.series.push_back({label, {}, {}});
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const double vx = r.state ? r.state->vx : nan;
        epm.series.back().x.push_back(vx);
        epm.series.back().y.push_back(r.state ? r.state->epm : nan);
        per_mass.series.back().x.push_back(vx);
        per_mass.series.back().y.push_back(r.state ? r.state->epm_per_mass() : nan);
        pitch.series.back().x.push_back(vx);
        pitch.series.back().y.push_back(rad_to_deg(r.theta));
    }
    const svg::Panel panels[] = {epm, per_mass, pitch};
    return svg::render(panels);
}

int cmd_sweep(Context &ctx, const std::string &masses_spec, const std::string &theta_spec, const std::string &vx_spec,
              const std::string &svg_path) {
    const auto vf = ctx.load();
    const auto coeffs = rotor_coefficients(vf.vehicle, vf.options);
    const auto masses = masses_or_default(masses_spec, vf.vehicle);
    if (!theta_spec.empty() && !vx_spec.empty()) {
        throw InputError("--theta-grid and --vx-grid are mutually exclusive");
    }
    std::vector<SweepRow> rows;
    if (!vx_spec.empty()) {
        rows = sweep_velocity(masses, vx_grid(vx_spec), vf.vehicle, coeffs, vf.options);
        ctx.manifest_params["vx_grid"] = vx_spec;
    } else {
        const auto spec = theta_spec.empty() ? std::string("0.5:60:120") : theta_spec;
        rows = sweep_pitch(masses, theta_grid_rad(spec, vf.options), vf.vehicle, coeffs, vf.options);
        ctx.manifest_params["theta_grid_deg"] = spec;
    }
    ctx.manifest_params["masses"] = masses;

    std::ostringstream os;
    csv::write_row(os, {"mass_kg", "theta_rad", "Vx_mps", "vi_mps", "omega_radps", "T_N", "Q_Nm", "P_W", "epm_Jpm",
                        "epm_over_m", "status"});
    const std::string nan = "nan";
    for (const auto &r : rows) {
        if (r.state) {
            const auto &s = *r.state;
            csv::write_row(os, {number(s.mass), number(s.theta), number(s.vx), number(s.vi), number(s.omega),
                                number(s.thrust), number(s.torque), number(s.power), number(s.epm),
                                number(s.epm_per_mass()), r.status});
        } else {
            csv::write_row(os, {number(r.mass), number(r.theta), nan, nan, nan, nan, nan, nan, nan, nan, r.status});
        }
    }
    ctx.emit(os.str());
    if (!svg_path.empty()) {
        Context::write_file(svg_path, sweep_svg(rows));
    }
    return kOk;
}

int cmd_optimize(Context &ctx, const std::string &masses_spec) {
    const auto vf = ctx.load();
    const auto coeffs = rotor_coefficients(vf.vehicle, vf.options);
    const auto masses = masses_or_default(masses_spec, vf.vehicle);
    ctx.manifest_params["masses"] = masses;

    const EnergyOptimizer cache(vf.vehicle, coeffs, vf.options);
    const double thetas[] = {vf.options.min_pitch_rad};
    const auto study = mass_scaling_study(masses, thetas, vf.vehicle, coeffs, vf.options);

    std::ostringstream os;
    csv::write_row(os, {"mass_kg", "theta_star_rad", "Vx_star_mps", "epm_star_J_per_m", "epm_star_over_m", "C",
                        "interior"});
    for (std::size_t i = 0; i < study.masses.size(); ++i) {
        const auto &o = study.optima[i];
        const double m = study.masses[i];
        csv::write_row(os, {number(m), number(o.theta_star), number(o.vx_star(m)), number(o.epm_at_mass),
                            number(o.epm_at_mass / m), number(cache.efficiency_constant()),
                            o.meta.interior ? "true" : "false"});
        if (!o.meta.interior) {
            ctx.err << fmt::format("warning: optimum at m = {} kg lies on the pitch search boundary\n", m);
        }
    }
    ctx.manifest_params["invariance"] = {{"theta_spread_rad", study.invariance.theta_spread},
                                         {"epm_per_mass_spread", study.invariance.epm_per_mass_spread},
                                         {"vx_per_sqrt_mass_spread", study.invariance.vx_per_sqrt_mass_spread}};
    ctx.emit(os.str());
    return kOk;
}

int cmd_validate(Context &ctx) {
    const auto vf = ctx.load();
    const auto report = run_validation(vf.vehicle, vf.options);
    std::ostringstream os;
    csv::write_row(os, {"check", "max_deviation", "tolerance", "status", "detail"});
    for (const auto &c : report.checks) {
        const std::string status = !c.gating ? "info" : (c.passed ? "pass" : "FAIL");
        csv::write_row(os, {c.name, number(c.max_deviation), number(c.tolerance), status, c.detail});
    }
    ctx.emit(os.str());
    if (!report.all_passed()) {
        for (const auto &c : report.checks) {
            if (c.gating && !c.passed) {
                ctx.err << "validation failed: " << c.name << "\n";
            }
        }
        return kValidationFailed;
    }
    return kOk;
}

int cmd_validate_quartic(Context &ctx, const std::string &masses_spec, const std::string &theta_spec) {
    const auto vf = ctx.load();
    require_valid(vf.vehicle);
    const auto masses = masses_or_default(masses_spec, vf.vehicle);
    const auto thetas = theta_grid_rad(theta_spec.empty() ? "0.5:60:50" : theta_spec, vf.options);
    ctx.manifest_params["masses"] = masses;
    ctx.manifest_params["theta_grid_deg"] = theta_spec.empty() ? "0.5:60:50" : theta_spec;
    std::ostringstream os;
    csv::write_row(os, {"theta_rad", "mass_kg", "vi_numeric", "vi_closed_form", "relative_error", "status"});
    bool ok = true;
    for (double m : masses) {
        for (double t : thetas) {
            try {
                const auto cf = induced_velocity_closed_form(t, m, vf.vehicle, ClosedFormVariant::ferrari,
                                                             vf.options.tol);
                ok = ok && cf.validated;
                csv::write_row(os, {number(t), number(m), number(cf.numeric_vi), number(cf.vi),
                                    number(cf.rel_error), cf.validated ? "validated" : "mismatch"});
            } catch (const ClosedFormInapplicableError &e) {
                const double thrust = m * vf.vehicle.env.g / std::cos(t);
                const double vx = velocity_from_pitch(t, m, vf.vehicle);
                const double vi = induced_velocity_numeric(thrust, vx, t, vf.vehicle, vf.options.tol);
                csv::write_row(os, {number(t), number(m), number(vi), "", "",
                                    std::string("inapplicable: ") + e.what()});
            }
        }
    }
    ctx.emit(os.str());
    return ok ? kOk : kValidationFailed;
}

int cmd_route(Context &ctx, const std::string &problem_path, bool verify) {
    if (problem_path.empty()) {
        throw InputError("a problem file is required");
    }
    auto df = load_delivery_problem(problem_path);
    ctx.inputs.push_back(problem_path);
    auto &p = df.problem;
    if (df.vehicle_config) {
        auto vf = load_vehicle_config(*df.vehicle_config);
        ctx.inputs.push_back(*df.vehicle_config);
        ctx.tol.apply(vf.options.tol);
        require_valid(vf.vehicle);
        if (!df.has_vehicle_mass) {
            p.vehicle_mass = vf.vehicle.dry_mass;
        }
        if (!df.has_efficiency_constant) {
            p.C = efficiency_constant(vf.vehicle, rotor_coefficients(vf.vehicle, vf.options), vf.options);
        }
    }
    ctx.manifest_params["vehicle_mass"] = p.vehicle_mass;
    ctx.manifest_params["efficiency_constant"] = p.C;
    ctx.manifest_params["mode"] = df.tour ? "tour" : "pairing";

    RoutePlan plan;
    if (df.tour) {
        plan = tour_bruteforce(p);
    } else {
        plan = pair_payloads(p);
        if (verify) {
            const auto check = pair_payloads_bruteforce(p);
            if (std::abs(check.total_energy - plan.total_energy) > 1e-12 * std::abs(check.total_energy)) {
                ctx.err << "verification failed: sort plan differs from exhaustive optimum\n";
                return kValidationFailed;
            }
        }
    }

    std::ostringstream os;
    csv::write_row(os, {"step", "kind", "target", "carried_mass_kg", "length_m", "energy_J"});
    for (const auto &leg : plan.legs) {
        std::string kind = df.tour ? (leg.target == p.nodes.size() ? "depot" : "node") : "segment";
        csv::write_row(os, {std::to_string(leg.step), kind, kind == "depot" ? "" : std::to_string(leg.target),
                            number(leg.carried_mass), number(leg.length), number(leg.energy)});
    }
    csv::write_row(os, {"total", std::string(to_string(plan.certificate)), "", "", "", number(plan.total_energy)});
    ctx.emit(os.str());
    return kOk;
}

int cmd_baselines(Context &ctx, const std::string &baseline_path, const std::string &masses_spec,
                  const std::string &vx_spec, const std::string &theta_spec) {
    const auto vf = ctx.load();
    if (baseline_path.empty()) {
        throw InputError("--baseline is required");
    }
    const auto bf = load_baseline_params(baseline_path);
    ctx.inputs.push_back(baseline_path);
    auto bp = bf.params;
    bp.g = vf.vehicle.env.g;
    if (const auto v = validate_baseline(bp); !v.empty()) {
        throw InputError(baseline_path + ": " + v.front().field + " violates " + v.front().rule);
    }
    const auto coeffs = rotor_coefficients(vf.vehicle, vf.options);
    const double mv = vf.vehicle.dry_mass;
    const auto masses = masses_spec.empty() ? std::vector<double>{mv, 2 * mv, 4 * mv} : parse_list(masses_spec);
    std::vector<double> vxs;
    if (vx_spec.empty()) {
        for (int i = 0; i < 8; ++i) {
            vxs.push_back(bp.lift_to_drag.front() + (bp.lift_to_drag.back() - bp.lift_to_drag.front()) * i / 7);
        }
        if (vxs.front() <= 0.0) {
            vxs.erase(vxs.begin());
        }
    } else {
        vxs = vx_grid(vx_spec);
    }
    const auto thetas = theta_grid_rad(theta_spec.empty() ? std::string("5:30:6") : theta_spec, vf.options);
    ctx.manifest_params["masses"] = masses;
    ctx.manifest_params["vx_grid"] = vxs;
    ctx.manifest_params["baseline"] = {{"eta", bp.eta}, {"rotor_count", bp.rotor_count}, {"spin_area", bp.spin_area}};

    const auto rep = divergence_report(vf.vehicle, coeffs, bp, masses, vxs, thetas, vf.options);
    std::ostringstream os;
    csv::write_row(os, {"axis", "axis_value", "model", "native_exponent", "spread_epm_over_m", "spread_native",
                        "status"});
    for (const auto &r : rep.rows) {
        csv::write_row(os, {std::string(to_string(r.axis)), number(r.axis_value), std::string(to_string(r.model)),
                            number(r.native_exponent), number(r.spread_epm_per_mass), number(r.spread_native),
                            r.status});
    }
    ctx.emit(os.str());
    return kOk;
}

} // namespace

std::vector<double> parse_list(const std::string &spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw InputError("not a number: '" + item + "' in '" + spec + "'");
        }
    }
    if (out.empty()) {
        throw InputError("empty list");
    }
    return out;
}

std::vector<double> parse_grid(const std::string &spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() != 3) {
        throw InputError("grid must be min:max:n, got '" + spec + "'");
    }
    double lo = 0;
    double hi = 0;
    long n = 0;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        n = std::stol(parts[2]);
    } catch (const std::exception &) {
        throw InputError("grid must be min:max:n, got '" + spec + "'");
    }
    if (n < 1 || hi < lo) {
        throw InputError("grid needs n >= 1 and max >= min, got '" + spec + "'");
    }
    std::vector<double> out;
    for (long i = 0; i < n; ++i) {
        out.push_back(n == 1 ? lo : (i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1)));
    }
    return out;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Steady-state multirotor energy-per-meter analysis", "epm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", EPM_VERSION);

    Context ctx{out, err, "", "", "", "", "", {}, json::object(), {}};
    std::string masses, theta_grid, vx_grid_spec, svg_path, baseline, problem;
    bool verify = false;

    auto common = [&](CLI::App *sub, bool with_config = true) {
        if (with_config) {
            sub->add_option("--config", ctx.config_path, "vehicle configuration (YAML)");
            sub->add_option("--mode", ctx.mode, "coefficient mode: oracle_consistent | as_published");
            sub->add_option("--frame", ctx.frame, "inflow frame: consistent | as_published");
        }
        sub->add_option("--out", ctx.out_path, "output CSV (default stdout); writes <out>.manifest.json alongside");
        ctx.tol.add(*sub);
    };

    auto *coeffs = app.add_subcommand("coeffs", "lumped thrust/torque coefficients in both modes");
    common(coeffs);

    auto *sweep = app.add_subcommand("sweep", "trim sweep over pitch or velocity for a set of masses");
    common(sweep);
    sweep->add_option("--masses", masses, "comma-separated total masses [kg] (default: dry mass)");
    sweep->add_option("--theta-grid", theta_grid, "pitch grid min:max:n in degrees (default 0.5:60:120)");
    sweep->add_option("--vx-grid", vx_grid_spec, "velocity grid min:max:n in m/s");
    sweep->add_option("--svg", svg_path, "also write an SVG plot (EPM, EPM/m, pitch vs Vx)");

    auto *optimize = app.add_subcommand("optimize", "energy-optimal pitch, velocity and EPM per mass");
    common(optimize);
    optimize->add_option("--masses", masses, "comma-separated total masses [kg]");

    auto *validate = app.add_subcommand("validate", "model cross-checks; exit 0 iff all pass");
    common(validate);

    auto *vquartic = app.add_subcommand("validate-quartic", "closed-form vs numeric induced velocity per point");
    common(vquartic);
    vquartic->add_option("--masses", masses, "comma-separated total masses [kg] (default: dry mass)");
    vquartic->add_option("--theta-grid", theta_grid, "pitch grid min:max:n in degrees (default 0.5:60:50)");

    auto *route = app.add_subcommand("route", "payload pairing or mass-weighted tour");
    common(route, false);
    route->add_option("problem,--problem", problem, "delivery problem file (YAML)");
    route->add_flag("--verify", verify, "cross-check the sort pairing against exhaustive search");

    auto *baselines = app.add_subcommand("baselines", "EPM/m spread of the trim model vs literature formulas");
    common(baselines);
    baselines->add_option("--baseline", baseline, "baseline parameter file (YAML)");
    baselines->add_option("--masses", masses, "comma-separated total masses [kg] (default mv, 2mv, 4mv)");
    baselines->add_option("--vx-grid", vx_grid_spec, "velocity grid min:max:n in m/s");
    baselines->add_option("--theta-grid", theta_grid, "pitch grid min:max:n in degrees (default 5:30:6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*coeffs) {
            ctx.command = "coeffs";
            return cmd_coeffs(ctx);
        }
        if (*sweep) {
            ctx.command = "sweep";
            return cmd_sweep(ctx, masses, theta_grid, vx_grid_spec, svg_path);
        }
        if (*optimize) {
            ctx.command = "optimize";
            return cmd_optimize(ctx, masses);
        }
        if (*validate) {
            ctx.command = "validate";
            return cmd_validate(ctx);
        }
        if (*vquartic) {
            ctx.command = "validate-quartic";
            return cmd_validate_quartic(ctx, masses, theta_grid);
        }
        if (*route) {
            ctx.command = "route";
            return cmd_route(ctx, problem, verify);
        }
        if (*baselines) {
            ctx.command = "baselines";
            return cmd_baselines(ctx, baseline, masses, vx_grid_spec, theta_grid);
        }
    } catch (const SizeError &e) {
        err << "size error: " << e.what() << " (suggested limit: " << e.limit() << ")\n";
        return kInputError;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace epm::cli
