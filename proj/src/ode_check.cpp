#include "nonlocal/ode_check.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nonlocal {

namespace {

constexpr double kNodeExclusionThreshold = 1e-6;

// Builder accuracy: the residual divides sampling errors by h^2, so the
// inversion is run well past the default tolerance.
constexpr double kBuilderInvertTol = 1e-15;

void check_build_args(int n, double amplitude, int grid_points) {
    if (n < 1)
        throw std::domain_error("build_eigenfunction: n must be >= 1, got " +
                                std::to_string(n));
    if (!(amplitude > 0.0))
        throw std::domain_error("build_eigenfunction: amplitude must be positive");
    if (grid_points < 64)
        throw std::domain_error("build_eigenfunction: need at least 64 grid points, got " +
                                std::to_string(grid_points));
}

}  // namespace

EigenSolution build_eigenfunction(int n, Epsilon eps, double amplitude,
                                  int grid_points) {
    eps.validate();
    check_build_args(n, amplitude, grid_points);

    const PQParams pq{2.0, eps.q()};
    const double wave_number = n * pi_pq_gamma(pq);

    EigenSolution sol;
    sol.n = n;
    sol.epsilon = eps.value;
    sol.amplitude = amplitude;
    sol.grid.resize(grid_points);
    sol.values.resize(grid_points);
    const double h = 1.0 / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        const double x = i == grid_points - 1 ? 1.0 : i * h;
        sol.grid[i] = x;
        sol.values[i] = amplitude * sin_pq(pq, wave_number * x, kBuilderInvertTol);
    }
    return sol;
}

double coupling_for(int n, Epsilon eps, double amplitude) {
    eps.validate();
    check_build_args(n, amplitude, 64);
    const double k = n * pi_pq_gamma({2.0, eps.q()});
    return k * k * (0.5 * eps.q()) * std::pow(amplitude, -eps.value);
}

double coupling_alternate(int n, Epsilon eps, double amplitude) {
    eps.validate();
    check_build_args(n, amplitude, 64);
    const double k = n * pi_pq_gamma({2.0, eps.q()});
    return (k * k) / (amplitude * amplitude);
}

ResidualReport residual(const EigenSolution& solution, double coupling) {
    const int m = static_cast<int>(solution.values.size());
    if (m < 64 || solution.grid.size() != solution.values.size())
        throw std::domain_error("residual: solution must carry at least 64 samples");

    const double eps = solution.epsilon;
    const double h = 1.0 / (m - 1);
    const double inv_h2 = 1.0 / (h * h);

    ResidualReport report;
    report.coupling_used = coupling;
    report.grid_size = m;

    double sum_sq = 0.0;
    for (int i = 1; i + 1 < m; ++i) {
        const double phi = solution.values[i];
        if (eps < 0.0 && std::abs(phi) < kNodeExclusionThreshold) {
            ++report.excluded_points;
            continue;
        }
        const double lap =
            (solution.values[i - 1] - 2.0 * phi + solution.values[i + 1]) * inv_h2;
        const double nonlinear =
            eps == 0.0 ? coupling * phi
                       : coupling * std::pow(std::abs(phi), eps) * phi;
        const double r = lap + nonlinear;
        report.l_inf = std::max(report.l_inf, std::abs(r));
        sum_sq += r * r;
    }
    report.l2 = std::sqrt(sum_sq * h);
    return report;
}

}  // namespace nonlocal
