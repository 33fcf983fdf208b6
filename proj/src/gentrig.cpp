#include "nonlocal/gentrig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nonlocal/quadrature.hpp"

namespace nonlocal {

void PQParams::validate() const {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::domain_error("PQParams: p must be finite and > 1, got " + std::to_string(p));
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::domain_error("PQParams: q must be finite and > 0, got " + std::to_string(q));
}

double pi_pq_gamma(const PQParams& pq) {
    pq.validate();
    const double a = 1.0 - 1.0 / pq.p;
    const double b = 1.0 / pq.q;
    // All Gamma arguments are positive, so lgamma is safe and exact in sign.
    const double log_val = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    return 2.0 / pq.q * std::exp(log_val);
}

namespace {

// (1 - (1-d)^q) / d, the bounded factor left after pulling (1-t) out of
// 1 - t^q at t = 1 - d; continuous with value q at d = 0.
double g_factor(double d, double q) {
    if (d <= 0.0) return q;
    if (d < 0.5) return -std::expm1(q * std::log1p(-d)) / d;
    return (1.0 - std::pow(1.0 - d, q)) / d;
}

// 1 - s^q without cancellation for s near 1.
double one_minus_pow(double s, double q) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    if (s < 0.5) return 1.0 - std::pow(s, q);
    return -std::expm1(q * std::log1p(s - 1.0));
}

// F_{p,q}(s) by the fixed tanh-sinh rule. The integral is split at
// s_split = 2^(-1/q): on [0, s_split] the plain integrand has t^q <= 1/2 with
// all steepness pinned to the endpoints, and past the split the change of
// variable 1 - t = u^{p/(p-1)} removes the t = 1 singularity. This keeps the
// evaluation error near machine precision and smooth in s, which downstream
// finite-difference consumers rely on.
double F_core(double s, double p, double q) {
    if (s <= 0.0) return 0.0;
    s = std::min(s, 1.0);
    const double one_minus_split = -std::expm1(-std::numbers::ln2 / q);
    const double split = 1.0 - one_minus_split;

    const double inv_p = 1.0 / p;
    double value = integrate_tanh_sinh(
        [&](double t, double, double) {
            return std::pow(1.0 - std::pow(t, q), -inv_p);
        },
        0.0, std::min(s, split));

    if (s > split) {
        const double sigma = p / (p - 1.0);
        const double u_hi = std::pow(one_minus_split, 1.0 / sigma);
        const double u_lo = std::pow(1.0 - s, 1.0 / sigma);
        value += sigma * integrate_tanh_sinh(
                             [&](double u, double, double) {
                                 return std::pow(g_factor(std::pow(u, sigma), q), -inv_p);
                             },
                             u_lo, u_hi);
    }
    return value;
}

// Solves F(s) = theta on [0, 1] for theta in [0, quarter]. Bracketed
// Newton/bisection hybrid: Newton steps (the derivative of F is closed-form)
// are accepted inside the bracket, bisection takes over otherwise. Once the
// termination threshold is met, two more Newton polish steps run so the final
// error tracks the F evaluation accuracy instead of the threshold.
double invert_core(double theta, double p, double q, double quarter, double tol) {
    if (theta <= 0.0) return 0.0;
    if (theta >= quarter) return 1.0;

    const double inv_p = 1.0 / p;
    // Newton step for F(s) - theta = 0; dF/ds = (1 - s^q)^{-1/p}.
    const auto newton = [&](double x, double fx) {
        return x - fx * std::pow(one_minus_pow(x, q), inv_p);
    };
    const auto polish = [&](double x) {
        for (int k = 0; k < 2; ++k) {
            const double fx = F_core(x, p, q) - theta;
            if (fx == 0.0) break;
            const double cand = newton(x, fx);
            if (!(cand > 0.0) || !(cand < 1.0) || cand == x) break;
            x = cand;
        }
        return x;
    };

    double lo = 0.0, hi = 1.0;
    double s = std::sin(theta / quarter * (0.5 * std::numbers::pi));
    s = std::clamp(s, 1e-12, 1.0 - 1e-12);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = F_core(s, p, q) - theta;
        if (f == 0.0) return s;
        if (f > 0.0)
            hi = s;
        else
            lo = s;

        double next = newton(s, f);
        if (next == s) return s;  // displacement below one ulp
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);

        const double delta = std::abs(next - s);
        s = next;
        if (delta <= tol * std::max(1.0, std::abs(s))) return polish(s);
        if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi))
            return polish(s);
    }
    throw ConvergenceError("sin_pq: inversion failed to converge");
}

struct Folded {
    double core;    // folded angle in [0, quarter]
    double sin_sign;
    double cos_sign;
};

// Quarter-wave reduction mirroring ordinary sine: reflect about the quarter
// period, negate over the second half period, tile with period 2*pi_{p,q}.
Folded fold_angle(double theta, double half_period) {
    Folded out{0.0, 1.0, 1.0};
    if (theta < 0.0) {
        theta = -theta;
        out.sin_sign = -out.sin_sign;  // sin odd, cos even
    }
    double t = std::fmod(theta, 2.0 * half_period);
    if (t > half_period) {
        t -= half_period;
        out.sin_sign = -out.sin_sign;
        out.cos_sign = -out.cos_sign;
    }
    if (t > 0.5 * half_period) {
        out.core = half_period - t;
        out.cos_sign = -out.cos_sign;
    } else {
        out.core = t;
    }
    return out;
}

}  // namespace

double pi_pq_quadrature(const PQParams& pq, double tol) {
    if (!(tol > 0.0))
        throw std::domain_error("pi_pq_quadrature: tol must be positive");
    return 2.0 * F_pq(pq, 1.0, 0.5 * tol);
}

double F_pq(const PQParams& pq, double s, double tol) {
    pq.validate();
    if (!(tol > 0.0))
        throw std::domain_error("F_pq: tol must be positive");
    if (!(s >= 0.0) || !(s <= 1.0))
        throw std::domain_error("F_pq: s must lie in [0, 1], got " + std::to_string(s));
    if (s == 0.0) return 0.0;

    const double sigma = pq.p / (pq.p - 1.0);
    const double u_s = std::pow(1.0 - s, 1.0 / sigma);
    const double inv_p = 1.0 / pq.p;
    const double q = pq.q;
    const double integral = integrate_adaptive_gk15(
        [sigma, inv_p, q](double u) {
            return std::pow(g_factor(std::pow(u, sigma), q), -inv_p);
        },
        u_s, 1.0, tol / sigma);
    return sigma * integral;
}

double sin_pq(const PQParams& pq, double theta, double invert_tol) {
    return eval_pq(pq, theta, invert_tol).sin_value;
}

double cos_pq(const PQParams& pq, double theta, double invert_tol) {
    return eval_pq(pq, theta, invert_tol).cos_value;
}

GenTrigEval eval_pq(const PQParams& pq, double theta, double invert_tol) {
    pq.validate();
    if (!(invert_tol > 0.0))
        throw std::domain_error("eval_pq: invert_tol must be positive");

    const double half_period = pi_pq_gamma(pq);  // pi_{p,q}
    const double quarter = 0.5 * half_period;
    const Folded fold = fold_angle(theta, half_period);
    const double s = invert_core(fold.core, pq.p, pq.q, quarter, invert_tol);

    GenTrigEval out;
    out.theta = theta;
    out.quarter_period = quarter;
    out.sin_value = fold.sin_sign * s;
    // Closed form keeps cos well defined at the quarter-period kinks that
    // appear for q < 2, where the derivative of sin is one-sided.
    out.cos_value = fold.cos_sign * std::pow(one_minus_pow(s, pq.q), 1.0 / pq.p);
    return out;
}

}  // namespace nonlocal
