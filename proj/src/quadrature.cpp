#include "epm/quadrature.hpp"

#include <algorithm>
#include <string>

#include <fmt/format.h>

namespace epm::quad {

namespace {

void append_simpson(Rule &rule, double a, double b, int n) {
    const double h = (b - a) / n;
    const std::size_t first = rule.nodes.size();
    // Shared endpoint with the previous piece: accumulate into the existing node.
    const bool shared = first > 0 && rule.nodes.back() == a;
    for (int k = 0; k <= n; ++k) {
        const double w = (k == 0 || k == n) ? h / 3.0 : (k % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
        if (k == 0 && shared) {
            rule.weights.back() += w;
            continue;
        }
        rule.nodes.push_back(k == n ? b : a + k * h);
        rule.weights.push_back(w);
    }
}

} // namespace

Rule simpson_rule(double a, double b, int intervals) {
    Rule rule;
    const int n = std::max(2, intervals + (intervals % 2));
    append_simpson(rule, a, b, n);
    return rule;
}

Rule simpson_rule(double a, double b, std::span<const double> breakpoints, int intervals) {
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) {
            cuts.push_back(x);
        }
    }
    cuts.push_back(b);
    std::sort(cuts.begin() + 1, cuts.end() - 1);

    Rule rule;
    const double span = b - a;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        if (len <= 0.0) {
            continue;
        }
        int n = static_cast<int>(std::lround(intervals * len / span / 2.0)) * 2;
        n = std::max(n, 2);
        append_simpson(rule, cuts[i], cuts[i + 1], n);
    }
    return rule;
}

void check_converged(const Estimate &fine, const Estimate &coarse, double rel_tol,
                     std::string_view what) {
    const double diff = std::abs(fine.value - coarse.value);
    if (!(diff <= rel_tol * fine.magnitude)) {
        throw QuadratureError(fmt::format("{}: quadrature not converged (half-step change {:.3g} relative)",
                                          what, fine.magnitude > 0 ? diff / fine.magnitude : diff));
    }
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> r, std::vector<double> values)
    : r_(std::move(r)), v_(std::move(values)) {}

double PiecewiseLinear::operator()(double r) const {
    if (r_.empty() || r < r_.front() || r > r_.back()) {
        throw DomainError("profile evaluated outside its sampled range");
    }
    if (r_.size() == 1) {
        return v_.front();
    }
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t hi = static_cast<std::size_t>(it - r_.begin());
    if (hi >= r_.size()) {
        return v_.back();
    }
    const std::size_t lo = hi - 1;
    const double t = (r - r_[lo]) / (r_[hi] - r_[lo]);
    return v_[lo] + t * (v_[hi] - v_[lo]);
}

PiecewiseLinear PiecewiseLinear::scaled(double k) const {
    std::vector<double> v = v_;
    for (double &x : v) {
        x *= k;
    }
    return {r_, std::move(v)};
}

} // namespace epm::quad
