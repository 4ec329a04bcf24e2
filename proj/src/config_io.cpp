#include "epm/config_io.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "epm/errors.hpp"

namespace epm {

namespace {

class Reader {
  public:
    explicit Reader(std::string label) : label_(std::move(label)) {}

    YAML::Node parse(std::string_view text) const {
        try {
            return YAML::Load(std::string(text));
        } catch (const YAML::ParserException &e) {
            throw ConfigError(label_, e.mark.line + 1, e.msg);
        }
    }

    [[noreturn]] void fail(const YAML::Node &at, const std::string &msg) const {
        const int line = at.IsDefined() && !at.Mark().is_null() ? at.Mark().line + 1 : 0;
        throw ConfigError(label_, line, msg);
    }

    YAML::Node map(const YAML::Node &parent, const std::string &key, const std::string &where) const {
        const YAML::Node n = parent[key];
        if (!n) {
            fail(parent, "missing section '" + join(where, key) + "'");
        }
        if (!n.IsMap()) {
            fail(n, "'" + join(where, key) + "' must be a mapping");
        }
        return n;
    }

    double number(const YAML::Node &parent, const std::string &key, const std::string &where) const {
        const YAML::Node n = parent[key];
        if (!n) {
            fail(parent, "missing key '" + join(where, key) + "'");
        }
        return scalar_number(n, join(where, key));
    }

    double number_or(const YAML::Node &parent, const std::string &key, const std::string &where,
                     double fallback) const {
        return parent[key] ? number(parent, key, where) : fallback;
    }

    int integer(const YAML::Node &parent, const std::string &key, const std::string &where) const {
        const YAML::Node n = parent[key];
        if (!n) {
            fail(parent, "missing key '" + join(where, key) + "'");
        }
        if (!n.IsScalar()) {
            fail(n, "'" + join(where, key) + "' must be an integer");
        }
        try {
            return n.as<int>();
        } catch (const YAML::Exception &) {
            fail(n, "'" + join(where, key) + "' must be an integer, got '" + n.Scalar() + "'");
        }
    }

    std::string text(const YAML::Node &parent, const std::string &key, const std::string &where) const {
        const YAML::Node n = parent[key];
        if (!n || !n.IsScalar()) {
            fail(n ? n : parent, "'" + join(where, key) + "' must be a string");
        }
        return n.Scalar();
    }

    std::vector<double> numbers(const YAML::Node &parent, const std::string &key, const std::string &where) const {
        const YAML::Node n = parent[key];
        if (!n) {
            fail(parent, "missing key '" + join(where, key) + "'");
        }
        if (!n.IsSequence()) {
            fail(n, "'" + join(where, key) + "' must be a list of numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < n.size(); ++i) {
            out.push_back(scalar_number(n[i], join(where, key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    void only_keys(const YAML::Node &n, std::initializer_list<std::string> allowed, const std::string &where) const {
        const std::set<std::string> ok(allowed);
        for (const auto &kv : n) {
            const auto key = kv.first.Scalar();
            if (!ok.contains(key)) {
                fail(kv.first, "unknown key '" + join(where, key) + "'");
            }
        }
    }

    quad::PiecewiseLinear table(const YAML::Node &parent, const std::string &key, const std::string &where,
                                const std::string &x_key, const std::string &y_key) const {
        const auto n = map(parent, key, where);
        const auto path = join(where, key);
        only_keys(n, {x_key, y_key}, path);
        auto x = numbers(n, x_key, path);
        auto y = numbers(n, y_key, path);
        if (x.size() != y.size()) {
            fail(n, "'" + path + "': " + x_key + " and " + y_key + " lengths differ");
        }
        if (x.empty()) {
            fail(n, "'" + path + "' has no samples");
        }
        for (std::size_t i = 1; i < x.size(); ++i) {
            if (!(x[i] > x[i - 1])) {
                fail(n[x_key][i], "'" + path + "." + x_key + "' must be strictly increasing");
            }
        }
        return {std::move(x), std::move(y)};
    }

    const std::string &label() const noexcept { return label_; }

  private:
    static std::string join(const std::string &where, const std::string &key) {
        return where.empty() ? key : where + "." + key;
    }

    double scalar_number(const YAML::Node &n, const std::string &what) const {
        if (!n.IsScalar()) {
            fail(n, "'" + what + "' must be a number");
        }
        try {
            return n.as<double>();
        } catch (const YAML::Exception &) {
            fail(n, "'" + what + "' must be a number, got '" + n.Scalar() + "'");
        }
    }

    std::string label_;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path, 0, "cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

VehicleFile parse_vehicle_config(std::string_view text, const std::string &label) {
    const Reader rd(label);
    const auto root = rd.parse(text);
    if (!root.IsMap()) {
        throw ConfigError(label, 1, "vehicle configuration must be a mapping");
    }
    rd.only_keys(root, {"environment", "vehicle", "blade", "model"}, "");

    VehicleFile out;
    out.path = label;
    auto &cfg = out.vehicle;
    if (root["environment"]) {
        const auto env = rd.map(root, "environment", "");
        rd.only_keys(env, {"rho", "g"}, "environment");
        cfg.env.rho = rd.number_or(env, "rho", "environment", cfg.env.rho);
        cfg.env.g = rd.number_or(env, "g", "environment", cfg.env.g);
    }

    const auto veh = rd.map(root, "vehicle", "");
    rd.only_keys(veh, {"propellers", "dry_mass", "body_drag"}, "vehicle");
    cfg.propellers = rd.integer(veh, "propellers", "vehicle");
    cfg.dry_mass = rd.number(veh, "dry_mass", "vehicle");
    cfg.body_drag = rd.number(veh, "body_drag", "vehicle");

    const auto bl = rd.map(root, "blade", "");
    rd.only_keys(bl, {"tip_radius", "root_radius", "blades", "lift_slope", "drag_coeff", "chord", "twist"}, "blade");
    cfg.blade.tip_radius = rd.number(bl, "tip_radius", "blade");
    cfg.blade.root_radius = rd.number(bl, "root_radius", "blade");
    cfg.blade.blades = rd.integer(bl, "blades", "blade");
    cfg.blade.lift_slope = rd.number(bl, "lift_slope", "blade");
    cfg.blade.drag_coeff = rd.number(bl, "drag_coeff", "blade");
    cfg.blade.chord = rd.table(bl, "chord", "blade", "r", "value");
    cfg.blade.twist = rd.table(bl, "twist", "blade", "r", "value");

    if (root["model"]) {
        const auto model = rd.map(root, "model", "");
        rd.only_keys(model, {"coefficient_mode", "frame", "max_pitch_deg", "min_pitch_deg"}, "model");
        if (model["coefficient_mode"]) {
            const auto s = rd.text(model, "coefficient_mode", "model");
            const auto m = parse_coefficient_mode(s);
            if (!m) {
                rd.fail(model["coefficient_mode"], "model.coefficient_mode must be as_published or oracle_consistent");
            }
            out.options.coefficient_mode = *m;
        }
        if (model["frame"]) {
            const auto s = rd.text(model, "frame", "model");
            const auto f = parse_frame_mode(s);
            if (!f) {
                rd.fail(model["frame"], "model.frame must be consistent or as_published");
            }
            out.options.frame = *f;
        }
        out.options.max_pitch_rad =
            deg_to_rad(rd.number_or(model, "max_pitch_deg", "model", rad_to_deg(out.options.max_pitch_rad)));
        out.options.min_pitch_rad =
            deg_to_rad(rd.number_or(model, "min_pitch_deg", "model", rad_to_deg(out.options.min_pitch_rad)));
    }
    return out;
}

VehicleFile load_vehicle_config(const std::string &path) { return parse_vehicle_config(read_file(path), path); }

BaselineFile parse_baseline_params(std::string_view text, const std::string &label) {
    const Reader rd(label);
    const auto root = rd.parse(text);
    if (!root.IsMap()) {
        throw ConfigError(label, 1, "baseline parameters must be a mapping");
    }
    rd.only_keys(root, {"eta", "rotor_count", "spin_area", "g", "lift_to_drag"}, "");
    BaselineFile out;
    out.path = label;
    auto &bp = out.params;
    bp.eta = rd.number(root, "eta", "");
    bp.rotor_count = rd.integer(root, "rotor_count", "");
    bp.spin_area = rd.number(root, "spin_area", "");
    bp.g = rd.number_or(root, "g", "", bp.g);
    bp.lift_to_drag = rd.table(root, "lift_to_drag", "", "vx", "ratio");
    return out;
}

BaselineFile load_baseline_params(const std::string &path) {
    return parse_baseline_params(read_file(path), path);
}

DeliveryFile parse_delivery_problem(std::string_view text, const std::string &label) {
    const Reader rd(label);
    const auto root = rd.parse(text);
    if (!root.IsMap()) {
        throw ConfigError(label, 1, "delivery problem must be a mapping");
    }
    rd.only_keys(root, {"vehicle_mass", "efficiency_constant", "vehicle_config", "payloads", "segments", "nodes", "depot"},
                 "");
    DeliveryFile out;
    out.path = label;
    auto &p = out.problem;
    if (root["vehicle_mass"]) {
        p.vehicle_mass = rd.number(root, "vehicle_mass", "");
        out.has_vehicle_mass = true;
    }
    if (root["efficiency_constant"]) {
        p.C = rd.number(root, "efficiency_constant", "");
        out.has_efficiency_constant = true;
    }
    if (root["vehicle_config"]) {
        std::filesystem::path ref = rd.text(root, "vehicle_config", "");
        if (ref.is_relative()) {
            ref = std::filesystem::path(label).parent_path() / ref;
        }
        out.vehicle_config = ref.string();
    }
    if (!out.has_efficiency_constant && !out.vehicle_config) {
        rd.fail(root, "either 'efficiency_constant' or 'vehicle_config' is required");
    }
    p.payloads = rd.numbers(root, "payloads", "");

    const bool has_segments = static_cast<bool>(root["segments"]);
    const bool has_nodes = static_cast<bool>(root["nodes"]);
    if (has_segments == has_nodes) {
        rd.fail(root, "exactly one of 'segments' (pairing) or 'nodes' (tour) is required");
    }
    if (has_segments) {
        p.segments = rd.numbers(root, "segments", "");
    } else {
        out.tour = true;
        const auto nodes = root["nodes"];
        if (!nodes.IsSequence()) {
            rd.fail(nodes, "'nodes' must be a list of [x, y] pairs");
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto n = nodes[i];
            if (!n.IsSequence() || n.size() != 2) {
                rd.fail(n, "'nodes[" + std::to_string(i) + "]' must be an [x, y] pair");
            }
            YAML::Node wrap;
            wrap["xy"] = n;
            const auto xy = rd.numbers(wrap, "xy", "nodes[" + std::to_string(i) + "]");
            p.nodes.push_back({xy[0], xy[1]});
        }
        if (root["depot"]) {
            const auto d = rd.numbers(root, "depot", "");
            if (d.size() != 2) {
                rd.fail(root["depot"], "'depot' must be an [x, y] pair");
            }
            p.depot = {d[0], d[1]};
        }
    }
    return out;
}

DeliveryFile load_delivery_problem(const std::string &path) {
    return parse_delivery_problem(read_file(path), path);
}

} // namespace epm
