#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epm/errors.hpp"

namespace epm::quad {

/// Nodes and weights of a composite rule; integrate by summing w[i] * f(x[i]).
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/**
 * Composite Simpson rule on [a, b] whose node set contains every breakpoint strictly inside
 * the interval. `intervals` is the total subinterval budget; it is shared between the pieces
 * in proportion to their length, each piece receiving an even count of at least two.
 */
Rule simpson_rule(double a, double b, std::span<const double> breakpoints, int intervals);

/// Uniform composite Simpson on [a, b] with an even number of subintervals.
Rule simpson_rule(double a, double b, int intervals);

struct Estimate {
    double value = 0.0;
    double magnitude = 0.0; ///< integral of |f|, the scale used by convergence checks
};

template <typename F> Estimate apply(const Rule &rule, F &&f) {
    Estimate est;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double fx = f(rule.nodes[i]);
        est.value += rule.weights[i] * fx;
        est.magnitude += rule.weights[i] * std::abs(fx);
    }
    return est;
}

/// Throws QuadratureError unless |fine - coarse| <= rel_tol * fine.magnitude.
void check_converged(const Estimate &fine, const Estimate &coarse, double rel_tol,
                     std::string_view what);

/**
 * Integrates f over [a, b] with `intervals` subintervals and asserts agreement with the
 * half-resolution result (Richardson-style comparison).
 */
template <typename F>
double integrate(F &&f, double a, double b, std::span<const double> breakpoints, int intervals,
                 double rel_tol, std::string_view what) {
    if (intervals < 4) {
        throw QuadratureError(std::string(what) + ": at least 4 quadrature intervals required");
    }
    const Rule fine_rule = simpson_rule(a, b, breakpoints, intervals);
    const Rule coarse_rule = simpson_rule(a, b, breakpoints, intervals / 2);
    if (coarse_rule.nodes.size() == fine_rule.nodes.size()) {
        // Every piece is already at its two-interval minimum; the comparison would be vacuous.
        throw QuadratureError(std::string(what) + ": " + std::to_string(intervals) +
                              " intervals cannot resolve the profile sample spacing");
    }
    const Estimate fine = apply(fine_rule, f);
    const Estimate coarse = apply(coarse_rule, f);
    check_converged(fine, coarse, rel_tol, what);
    return fine.value;
}

/// Linear interpolation through (r, value) samples; no extrapolation.
class PiecewiseLinear {
  public:
    PiecewiseLinear() = default;
    PiecewiseLinear(std::vector<double> r, std::vector<double> values);

    /// Throws DomainError outside [front, back].
    [[nodiscard]] double operator()(double r) const;

    [[nodiscard]] std::span<const double> abscissae() const noexcept { return r_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return v_; }
    [[nodiscard]] bool empty() const noexcept { return r_.empty(); }
    [[nodiscard]] double front() const { return r_.front(); }
    [[nodiscard]] double back() const { return r_.back(); }

    [[nodiscard]] PiecewiseLinear scaled(double k) const;

  private:
    std::vector<double> r_;
    std::vector<double> v_;
};

} // namespace epm::quad
