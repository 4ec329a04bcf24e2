#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epm/baselines.hpp"
#include "epm/options.hpp"
#include "epm/params.hpp"
#include "epm/routing.hpp"

namespace epm {

/// A vehicle configuration file: the vehicle plus the optional `model:` section.
struct VehicleFile {
    std::string path;
    VehicleConfig vehicle;
    ModelOptions options;
};

/// Reads a YAML vehicle configuration (schema in docs/config_format.md). Throws ConfigError
/// with the file path and line for syntax errors, missing or unknown keys and bad numbers.
/// Physical invariants are not checked here; see validate_config.
VehicleFile load_vehicle_config(const std::string &path);
VehicleFile parse_vehicle_config(std::string_view text, const std::string &label);

struct BaselineFile {
    std::string path;
    BaselineParams params;
};

BaselineFile load_baseline_params(const std::string &path);
BaselineFile parse_baseline_params(std::string_view text, const std::string &label);

struct DeliveryFile {
    std::string path;
    DeliveryProblem problem;
    bool tour = false;
    bool has_vehicle_mass = false;
    bool has_efficiency_constant = false;
    std::optional<std::string> vehicle_config; ///< resolved against the problem file's directory
};

DeliveryFile load_delivery_problem(const std::string &path);
DeliveryFile parse_delivery_problem(std::string_view text, const std::string &label);

} // namespace epm
