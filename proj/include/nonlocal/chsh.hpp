#pragma once

// Bell-CHSH functional over the generalized circle: evaluation at explicit
// detector settings, derivative-free maximization, the conjectured bound
// 4 / 2^{(1+eps)/(2+eps)}, and the eps sweep comparing the two.

#include <vector>

#include "nonlocal/born.hpp"

namespace nonlocal {

// Detector angles on the generalized circle. Only pairwise differences enter
// the functional; they are reduced modulo the period 2*pi_{2,2+eps} before
// evaluation.
struct MeasurementSettings {
    double alpha = 0.0;
    double alpha_prime = 0.0;
    double beta = 0.0;
    double beta_prime = 0.0;
};

struct SearchConfig {
    int grid_n = 48;          // coarse grid resolution per free axis
    int multistart = 8;       // refinement starts from the best grid cells
    double refine_tol = 1e-9; // simplex stopping width, in functional value
    int max_iterations = 2000;// per refinement start
    double invert_tol = kDefaultInvertTol;

    void validate() const;  // throws std::invalid_argument
};

struct BellResult {
    double value = 0.0;
    MeasurementSettings settings;  // alpha gauge-fixed to 0
    double epsilon = 0.0;
    Convention convention = Convention::PaperLiteral;
    long long evaluations = 0;  // functional evaluations spent
    bool converged = false;
};

struct SweepRecord {
    double epsilon = 0.0;
    double max_bell = 0.0;
    double conjecture = 0.0;
    double relative_deviation = 0.0;  // |max_bell - conjecture| / max_bell
    bool converged = false;
};

// E(beta-alpha) + E(beta'-alpha) + E(beta-alpha') - E(beta'-alpha').
double bell_value(Epsilon eps, const MeasurementSettings& settings, Convention mode,
                  double invert_tol = kDefaultInvertTol);

// 4 / 2^{(1+eps)/(2+eps)}.
double conjecture_bound(Epsilon eps);

// Gauge-fixes alpha = 0, scans an N^3 lattice over (alpha', beta, beta'), then
// refines from the best multistart cells with a Nelder-Mead simplex.
// Deterministic for a fixed config; a refinement hitting the iteration cap is
// reported through converged = false, never an exception.
BellResult maximize_bell(Epsilon eps, Convention mode, const SearchConfig& cfg = {});

// One record per epsilon, computed independently (at most max_threads workers;
// 0 picks the hardware default). Records come back sorted by epsilon
// regardless of completion order. Throws std::domain_error before any work if
// some epsilon is invalid.
std::vector<SweepRecord> sweep(std::vector<double> eps_values, Convention mode,
                               const SearchConfig& cfg = {}, unsigned max_threads = 0);

}  // namespace nonlocal
