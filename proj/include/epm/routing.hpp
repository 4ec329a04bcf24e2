#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace epm {

/// Largest instance (payloads or delivery nodes) the exhaustive solvers accept.
inline constexpr std::size_t kBruteForceLimit = 9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/**
 * Payload delivery under the linear energy law E = C (mv + m) L.
 *
 * Pairing mode: `segments` holds one pre-defined route length per payload.
 * Tour mode: `nodes` holds one destination per payload; the vehicle leaves `depot` loaded,
 * drops each payload on arrival and returns empty.
 */
struct DeliveryProblem {
    double vehicle_mass = 0.0; ///< mv [kg]
    double C = 0.0;            ///< J/(m kg)
    std::vector<double> payloads;
    std::vector<double> segments;
    std::vector<Point2> nodes;
    Point2 depot;
};

enum class Certificate { exact_bruteforce, exact_sort, heuristic };
std::string_view to_string(Certificate c);

struct PlanLeg {
    std::size_t step = 0;
    std::size_t target = 0;   ///< segment index (pairing) or node index (tour); depot = nodes.size()
    double carried_mass = 0.0; ///< mv plus undelivered payload
    double length = 0.0;
    double energy = 0.0;
};

struct RoutePlan {
    /// Pairing: assignment[i] is the segment flown with payload i. Tour: visit order of nodes.
    std::vector<std::size_t> assignment;
    double total_energy = 0.0;
    Certificate certificate = Certificate::heuristic;
    std::vector<PlanLeg> legs;
};

/// Sum over i of C (mv + m_i) L_assignment[i]. Throws ShapeError on a bad assignment.
double pairing_energy(const DeliveryProblem &p, const std::vector<std::size_t> &assignment);

/// Energy of depot -> nodes in `order` -> depot with the carried mass dropping at each stop.
double tour_energy(const DeliveryProblem &p, const std::vector<std::size_t> &order);

/// Exact: heaviest payload on the shortest segment (rearrangement inequality). Equal masses keep
/// payload index order; equal lengths keep segment index order.
RoutePlan pair_payloads(const DeliveryProblem &p);

/// Exhaustive over all pairings; ties go to the lexicographically smallest permutation.
RoutePlan pair_payloads_bruteforce(const DeliveryProblem &p);

/// Exhaustive over visit orders; ties go to the lexicographically smallest order.
RoutePlan tour_bruteforce(const DeliveryProblem &p);

bool is_permutation_of_range(const std::vector<std::size_t> &perm, std::size_t n);

} // namespace epm
