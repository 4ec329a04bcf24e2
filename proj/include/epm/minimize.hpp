#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace epm::scalar {

struct MinimizeResult {
    double x = 0.0;
    double fx = 0.0;
    double lo = 0.0; ///< final bracket
    double hi = 0.0;
    int iterations = 0;
    bool converged = false;
};

/**
 * Brent's derivative-free minimizer on [lo, hi]: golden-section steps with parabolic
 * interpolation when the last parabola behaved. Stops once the best point lies within `xtol`
 * of both bracket ends.
 */
template <typename F>
MinimizeResult brent_minimize(F &&f, double lo, double hi, double xtol, int max_iter = 500) {
    constexpr double kGolden = 0.3819660112501051; // (3 - sqrt(5)) / 2
    const double eps = std::numeric_limits<double>::epsilon();

    double a = lo;
    double b = hi;
    double x = a + kGolden * (b - a);
    double w = x;
    double v = x;
    double fx = f(x);
    double fw = fx;
    double fv = fx;
    double d = 0.0;
    double e = 0.0;

    MinimizeResult out;
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it;
        const double mid = 0.5 * (a + b);
        const double tol1 = 0.5 * xtol + 2.0 * eps * std::abs(x);
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) {
            out.converged = true;
            break;
        }

        bool golden = true;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) {
                p = -p;
            }
            q = std::abs(q);
            const double e_prev = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) {
                    d = mid > x ? tol1 : -tol1;
                }
                golden = false;
            }
        }
        if (golden) {
            e = (x >= mid ? a : b) - x;
            d = kGolden * e;
        }

        const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            (u >= x ? a : b) = x;
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            (u < x ? a : b) = u;
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    out.x = x;
    out.fx = fx;
    out.lo = a;
    out.hi = b;
    return out;
}

} // namespace epm::scalar
