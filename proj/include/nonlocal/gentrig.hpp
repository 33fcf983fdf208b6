#pragma once

// Generalized trigonometric functions. sin_{p,q} is the inverse of the
// incomplete integral
//     F_{p,q}(s) = int_0^s (1 - t^q)^{-1/p} dt,   s in [0, 1],
// extended to the whole real line by quarter-wave reflection, odd symmetry and
// period 2*pi_{p,q}, where pi_{p,q} = 2 F_{p,q}(1). cos_{p,q} is its
// derivative, which obeys |cos|^p + |sin|^q = 1. At p = q = 2 everything
// reduces to ordinary trigonometry.

namespace nonlocal {

struct PQParams {
    double p = 2.0;
    double q = 2.0;

    // p > 1 keeps the integrand integrable at t = 1, q > 0 keeps F monotone.
    // Throws std::domain_error otherwise.
    void validate() const;
};

struct GenTrigEval {
    double theta = 0.0;
    double sin_value = 0.0;
    double cos_value = 0.0;
    double quarter_period = 0.0;  // pi_{p,q} / 2
};

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr double kDefaultInvertTol = 1e-12;

// pi_{p,q} = 2 Gamma(1-1/p) Gamma(1/q) / (q Gamma(1-1/p+1/q)).
double pi_pq_gamma(const PQParams& pq);

// pi_{p,q} = 2 int_0^1 (1-t^q)^{-1/p} dt by adaptive quadrature with an
// absolute error target. The endpoint singularity at t = 1 is removed by the
// change of variable 1 - t = u^{p/(p-1)} before integrating.
double pi_pq_quadrature(const PQParams& pq, double tol = kDefaultQuadTol);

// F_{p,q}(s) for s in [0, 1]; strictly increasing, F(0) = 0,
// F(1) = pi_{p,q}/2. Throws std::domain_error outside [0, 1].
double F_pq(const PQParams& pq, double s, double tol = kDefaultQuadTol);

// invert_tol is the termination threshold of the bracketed inversion; the
// returned values are polished beyond it and are limited in practice by the
// accuracy of the internal F evaluation (~1e-14).
double sin_pq(const PQParams& pq, double theta, double invert_tol = kDefaultInvertTol);
double cos_pq(const PQParams& pq, double theta, double invert_tol = kDefaultInvertTol);

// Single inversion serving both values plus the quarter period.
GenTrigEval eval_pq(const PQParams& pq, double theta, double invert_tol = kDefaultInvertTol);

}  // namespace nonlocal
