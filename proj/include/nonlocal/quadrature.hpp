#pragma once

// One-dimensional quadrature building blocks: a fixed-level tanh-sinh rule for
// integrands with (integrable) endpoint singularities, and an adaptive
// Gauss-Kronrod G7/K15 scheme with an absolute error target.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonlocal {

// Raised when an iterative numerical routine cannot reach its target accuracy.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct TanhSinhTable {
    std::vector<double> frac_lo;  // node position as fraction of the interval, from lo
    std::vector<double> frac_hi;  // distance to hi as fraction of the interval
    std::vector<double> weight;   // step size folded in
};

const TanhSinhTable& tanh_sinh_table();

}  // namespace detail

// Integrates f over [lo, hi] with a fixed tanh-sinh rule (~1e-14 for integrands
// that are analytic inside the interval, including endpoint algebraic
// singularities). The integrand receives the exact distances to both endpoints
// so singular factors can be formed without cancellation:
//   f(x, dist_lo, dist_hi) with x = lo + dist_lo = hi - dist_hi.
template <class F>
double integrate_tanh_sinh(F&& f, double lo, double hi) {
    const double len = hi - lo;
    if (!(len > 0.0)) return 0.0;
    const auto& tbl = detail::tanh_sinh_table();
    double acc = 0.0;
    for (std::size_t i = 0; i < tbl.weight.size(); ++i) {
        const double da = len * tbl.frac_lo[i];
        const double db = len * tbl.frac_hi[i];
        acc += tbl.weight[i] * f(lo + da, da, db);
    }
    return acc * len;
}

// Adaptive G7/K15 bisection until the summed error estimate is below abs_tol.
// Throws ConvergenceError once the panel budget is exhausted.
double integrate_adaptive_gk15(const std::function<double(double)>& f,
                               double lo, double hi, double abs_tol,
                               int max_panels = 4000);

}  // namespace nonlocal
