// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hsf/error.hpp"

namespace hsf {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    /// Maximum adaptive bisection depth per sub-interval; bounds the number of
    /// integrand evaluations to roughly 15 * 2^max_depth per piece.
    unsigned max_depth = 18;
};

struct QuadratureResult {
    std::complex<double> value;
    double error = 0.0;
};

namespace detail {

struct QuadPiece {
    double a, b;
    std::complex<double> value;
    double error, l1;
    unsigned depth;
    bool operator<(const QuadPiece& o) const { return error < o.error; }
};

// One 7/15-point Kronrod panel. The rule is applied on [-1, 1] so its error
// estimate and L1 norm come back in the right units.
template <class F>
QuadPiece kronrod_panel(F& f, double a, double b, unsigned depth) {
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double err = 0.0, l1 = 0.0;
    const std::complex<double> v =
        gk::integrate([&](double u) { return std::complex<double>(f(mid + half * u)) * half; }, -1.0, 1.0, 0,
                      0.0, &err, &l1);
    return {a, b, v, err, l1, depth};
}

}  // namespace detail

/// Globally adaptive 7/15-point Gauss-Kronrod over consecutive breakpoints:
/// the panel with the largest error estimate is bisected until the summed
/// error is below `rel_tol` times the summed L1 norm.
///
/// Throws QuadratureError (carrying the partial sum) when a panel would need
/// more than `max_depth` bisections.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints, const QuadratureSpec& spec) {
    detail::require(spec.rel_tol > 0.0, "quadrature tolerance must be positive");
    detail::require(breakpoints.size() >= 2, "need at least two breakpoints");

    std::vector<double> pts(breakpoints.begin(), breakpoints.end());
    for (double p : pts) detail::require(std::isfinite(p), "breakpoints must be finite");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::priority_queue<detail::QuadPiece> queue;
    std::complex<double> total{0.0, 0.0};
    double err = 0.0, l1 = 0.0;
    auto push = [&](detail::QuadPiece p) {
        total += p.value;
        err += p.error;
        l1 += p.l1;
        queue.push(p);
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) push(detail::kronrod_panel(f, pts[i], pts[i + 1], 0));

    while (!queue.empty() && err > spec.rel_tol * l1) {
        const detail::QuadPiece worst = queue.top();
        if (worst.depth >= spec.max_depth) {
            throw QuadratureError("quadrature did not converge: estimated error " + std::to_string(err / l1) +
                                      " of the L1 norm at maximum depth",
                                  total, err);
        }
        queue.pop();
        total -= worst.value;
        err -= worst.error;
        l1 -= worst.l1;
        const double mid = 0.5 * (worst.a + worst.b);
        push(detail::kronrod_panel(f, worst.a, mid, worst.depth + 1));
        push(detail::kronrod_panel(f, mid, worst.b, worst.depth + 1));
    }
    return {total, std::max(err, 0.0)};
}

}  // namespace hsf
