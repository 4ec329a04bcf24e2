#pragma once

#include <span>
#include <string>
#include <vector>

#include "epm/options.hpp"
#include "epm/params.hpp"
#include "epm/quadrature.hpp"

namespace epm {

/// Inputs of the two literature EPM formulas that assume EPM proportional to a power of mass.
struct BaselineParams {
    double eta = 1.0;               ///< lumped system efficiency, (0, 1]
    quad::PiecewiseLinear lift_to_drag; ///< r(Vx), sampled over Vx [m/s]
    int rotor_count = 1;            ///< n
    double spin_area = 0.0;         ///< zeta [m^2]
    double g = 9.81;
};

std::vector<Violation> validate_baseline(const BaselineParams &bp);

/// EPM = m g / (r(Vx) eta). Throws DomainError when Vx is outside the r(Vx) table.
double epm_lift_drag(double mass, double vx, const BaselineParams &bp);

/// EPM = (g sum m_k)^{3/2} / (eta Vx sqrt(2 n rho zeta)).
double epm_hover_model(std::span<const double> component_masses, double vx, const BaselineParams &bp,
                       double rho);

enum class Axis { fixed_vx, fixed_theta };
enum class BaselineModel { physics, lift_drag, hover };

std::string_view to_string(Axis a);
std::string_view to_string(BaselineModel m);

struct DivergenceRow {
    Axis axis = Axis::fixed_vx;
    double axis_value = 0.0; ///< m/s or rad
    BaselineModel model = BaselineModel::physics;
    double native_exponent = 1.0; ///< k in EPM ~ m^k claimed by the model
    double spread_epm_per_mass = 0.0;   ///< (max - min) / mean of EPM/m across masses
    double spread_native = 0.0;         ///< same for EPM/m^k
    std::string status = "ok";          ///< anything else: spread is NaN
};

struct DivergenceReport {
    std::vector<double> masses;
    std::vector<DivergenceRow> rows;
};

/**
 * Spread of EPM/m across the mass set, at each fixed velocity and at each fixed pitch, for the
 * trim model and both baselines. At fixed pitch the baselines are evaluated at each mass's own
 * trim velocity.
 */
DivergenceReport divergence_report(const VehicleConfig &cfg, const RotorCoefficients &coeffs,
                                   const BaselineParams &bp, std::span<const double> masses,
                                   std::span<const double> vx_grid, std::span<const double> theta_grid,
                                   const ModelOptions &opts = {});

} // namespace epm
