#include "epm/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "epm/errors.hpp"

namespace epm {

namespace {

constexpr double kTieTolerance = 1e-12;

void validate_common(const DeliveryProblem &p) {
    if (!(p.C > 0.0)) {
        throw DomainError("efficiency constant C must be positive");
    }
    if (!(p.vehicle_mass >= 0.0)) {
        throw DomainError("vehicle mass must be non-negative");
    }
    for (double m : p.payloads) {
        if (!(m >= 0.0)) {
            throw DomainError("payload masses must be non-negative");
        }
    }
}

void validate_pairing(const DeliveryProblem &p) {
    validate_common(p);
    if (p.payloads.size() != p.segments.size()) {
        throw ShapeError("pairing needs one segment per payload (" + std::to_string(p.payloads.size()) +
                         " payloads, " + std::to_string(p.segments.size()) + " segments)");
    }
    for (double l : p.segments) {
        if (!(l > 0.0)) {
            throw DomainError("segment lengths must be positive");
        }
    }
}

void validate_tour(const DeliveryProblem &p) {
    validate_common(p);
    if (p.payloads.size() != p.nodes.size()) {
        throw ShapeError("tour needs one payload per node (" + std::to_string(p.payloads.size()) +
                         " payloads, " + std::to_string(p.nodes.size()) + " nodes)");
    }
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<PlanLeg> pairing_legs(const DeliveryProblem &p, const std::vector<std::size_t> &a) {
    std::vector<PlanLeg> legs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double carried = p.vehicle_mass + p.payloads[i];
        const double len = p.segments[a[i]];
        legs.push_back({i, a[i], carried, len, p.C * carried * len});
    }
    return legs;
}

std::vector<PlanLeg> tour_legs(const DeliveryProblem &p, const std::vector<std::size_t> &order) {
    std::vector<PlanLeg> legs;
    double carried = p.vehicle_mass + std::accumulate(p.payloads.begin(), p.payloads.end(), 0.0);
    Point2 at = p.depot;
    std::size_t step = 0;
    for (std::size_t node : order) {
        const double len = distance(at, p.nodes[node]);
        legs.push_back({step++, node, carried, len, p.C * carried * len});
        carried -= p.payloads[node];
        at = p.nodes[node];
    }
    // Return leg carries only the airframe; clamp rounding residue from the subtractions.
    carried = p.vehicle_mass;
    const double len = distance(at, p.depot);
    legs.push_back({step, p.nodes.size(), carried, len, p.C * carried * len});
    return legs;
}

double sum_energy(const std::vector<PlanLeg> &legs) {
    double e = 0.0;
    for (const auto &l : legs) {
        e += l.energy;
    }
    return e;
}

template <typename Cost>
std::vector<std::size_t> enumerate(std::size_t n, Cost &&cost) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> best = perm;
    double best_cost = cost(perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        const double c = cost(perm);
        if (c < best_cost - kTieTolerance * std::abs(best_cost)) {
            best_cost = c;
            best = perm;
        }
    }
    return best;
}

} // namespace

std::string_view to_string(Certificate c) {
    switch (c) {
    case Certificate::exact_bruteforce:
        return "exact_bruteforce";
    case Certificate::exact_sort:
        return "exact_sort";
    case Certificate::heuristic:
        return "heuristic";
    }
    return "unknown";
}

bool is_permutation_of_range(const std::vector<std::size_t> &perm, std::size_t n) {
    if (perm.size() != n) {
        return false;
    }
    std::vector<bool> seen(n, false);
    for (std::size_t v : perm) {
        if (v >= n || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

double pairing_energy(const DeliveryProblem &p, const std::vector<std::size_t> &assignment) {
    if (!is_permutation_of_range(assignment, p.segments.size()) || assignment.size() != p.payloads.size()) {
        throw ShapeError("assignment is not a permutation of the segments");
    }
    return sum_energy(pairing_legs(p, assignment));
}

double tour_energy(const DeliveryProblem &p, const std::vector<std::size_t> &order) {
    if (!is_permutation_of_range(order, p.nodes.size())) {
        throw ShapeError("visit order is not a permutation of the nodes");
    }
    return sum_energy(tour_legs(p, order));
}

RoutePlan pair_payloads(const DeliveryProblem &p) {
    validate_pairing(p);
    const std::size_t n = p.payloads.size();
    std::vector<std::size_t> by_mass(n), by_length(n);
    std::iota(by_mass.begin(), by_mass.end(), std::size_t{0});
    std::iota(by_length.begin(), by_length.end(), std::size_t{0});
    std::stable_sort(by_mass.begin(), by_mass.end(),
                     [&](std::size_t a, std::size_t b) { return p.payloads[a] > p.payloads[b]; });
    std::stable_sort(by_length.begin(), by_length.end(),
                     [&](std::size_t a, std::size_t b) { return p.segments[a] < p.segments[b]; });

    // Every optimal pairing gives each equal-mass group the same multiset of lengths. Handing
    // those out by payload index, smallest free segment index first, yields the
    // lexicographically smallest optimal assignment, the same one brute force reports.
    std::vector<std::size_t> group(n);
    std::vector<std::map<double, std::size_t>> need;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == 0 || p.payloads[by_mass[k]] != p.payloads[by_mass[k - 1]]) {
            need.emplace_back();
        }
        group[by_mass[k]] = need.size() - 1;
        ++need.back()[p.segments[by_length[k]]];
    }
    std::map<double, std::set<std::size_t>> free_segments;
    for (std::size_t j = 0; j < n; ++j) {
        free_segments[p.segments[j]].insert(j);
    }

    RoutePlan plan;
    plan.assignment.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto &want = need[group[i]];
        auto pick = want.end();
        for (auto it = want.begin(); it != want.end(); ++it) {
            if (pick == want.end() || *free_segments[it->first].begin() < *free_segments[pick->first].begin()) {
                pick = it;
            }
        }
        auto &pool = free_segments[pick->first];
        plan.assignment[i] = *pool.begin();
        pool.erase(pool.begin());
        if (--pick->second == 0) {
            want.erase(pick);
        }
    }
    plan.certificate = Certificate::exact_sort;
    plan.legs = pairing_legs(p, plan.assignment);
    plan.total_energy = sum_energy(plan.legs);
    return plan;
}

RoutePlan pair_payloads_bruteforce(const DeliveryProblem &p) {
    validate_pairing(p);
    if (p.payloads.size() > kBruteForceLimit) {
        throw SizeError("brute-force pairing limited to " + std::to_string(kBruteForceLimit) + " payloads, got " +
                            std::to_string(p.payloads.size()),
                        kBruteForceLimit);
    }
    RoutePlan plan;
    plan.assignment = enumerate(p.payloads.size(), [&](const auto &a) { return sum_energy(pairing_legs(p, a)); });
    plan.certificate = Certificate::exact_bruteforce;
    plan.legs = pairing_legs(p, plan.assignment);
    plan.total_energy = sum_energy(plan.legs);
    return plan;
}

RoutePlan tour_bruteforce(const DeliveryProblem &p) {
    validate_tour(p);
    if (p.nodes.size() > kBruteForceLimit) {
        throw SizeError("brute-force tour limited to " + std::to_string(kBruteForceLimit) + " delivery nodes, got " +
                            std::to_string(p.nodes.size()),
                        kBruteForceLimit);
    }
    RoutePlan plan;
    plan.assignment = enumerate(p.nodes.size(), [&](const auto &o) { return sum_energy(tour_legs(p, o)); });
    plan.certificate = Certificate::exact_bruteforce;
    plan.legs = tour_legs(p, plan.assignment);
    plan.total_energy = sum_energy(plan.legs);
    return plan;
}

} // namespace epm
