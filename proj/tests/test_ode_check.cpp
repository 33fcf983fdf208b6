#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nonlocal/ode_check.hpp"

using namespace nonlocal;

namespace {

constexpr double kPi = std::numbers::pi;

double linf_order(int n, double eps, double amplitude, int m, double pert = 1.0) {
    const EigenSolution coarse = build_eigenfunction(n, {eps}, amplitude, m);
    const EigenSolution fine = build_eigenfunction(n, {eps}, amplitude, 2 * m);
    const double c = pert * coupling_for(n, {eps}, amplitude);
    return std::log2(residual(coarse, c).l_inf / residual(fine, c).l_inf);
}

}  // namespace

TEST_CASE("eigenfunction reduces to sin(pi x) at eps = 0") {
    const EigenSolution sol = build_eigenfunction(1, {0.0}, 1.0, 256);
    REQUIRE(sol.values.size() == 256);
    for (int i = 0; i < 256; ++i) {
        CHECK(std::abs(sol.values[i] - std::sin(kPi * sol.grid[i])) <= 1e-12);
    }
}

TEST_CASE("Dirichlet boundary values vanish") {
    for (auto [n, eps] : std::vector<std::pair<int, double>>{
             {1, 0.0}, {2, 0.5}, {3, -0.5}, {1, 4.0}}) {
        const EigenSolution sol = build_eigenfunction(n, {eps}, 1.3, 128);
        CAPTURE(n);
        CAPTURE(eps);
        CHECK(std::abs(sol.values.front()) <= 1e-10);
        CHECK(std::abs(sol.values.back()) <= 1e-10);
    }
}

TEST_CASE("second mode has an interior node at 1/2") {
    const EigenSolution sol = build_eigenfunction(2, {0.0}, 1.0, 257);
    CHECK(sol.grid[128] == 0.5);
    CHECK(std::abs(sol.values[128]) <= 1e-12);
}

TEST_CASE("interior maximum equals the amplitude at the half-period midpoint") {
    const EigenSolution sol = build_eigenfunction(1, {1.0}, 2.0, 257);
    double peak = 0.0;
    for (double v : sol.values) peak = std::max(peak, std::abs(v));
    CHECK(sol.values[128] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(peak == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("builder argument validation") {
    CHECK_THROWS_AS(build_eigenfunction(0, {0.0}, 1.0, 128), std::domain_error);
    CHECK_THROWS_AS(build_eigenfunction(1, {0.0}, 0.0, 128), std::domain_error);
    CHECK_THROWS_AS(build_eigenfunction(1, {0.0}, -1.0, 128), std::domain_error);
    CHECK_THROWS_AS(build_eigenfunction(1, {0.0}, 1.0, 63), std::domain_error);
    CHECK_THROWS_AS(build_eigenfunction(1, {-1.0}, 1.0, 128), std::domain_error);
}

TEST_CASE("coupling_for closed forms") {
    CHECK(coupling_for(1, {0.0}, 1.0) == doctest::Approx(kPi * kPi).epsilon(1e-14));
    const double p23 = pi_pq_gamma({2.0, 3.0});
    CHECK(coupling_for(1, {1.0}, 1.0) ==
          doctest::Approx(p23 * p23 * 1.5).epsilon(1e-14));
    // amplitude^{-eps} scaling
    CHECK(coupling_for(1, {1.0}, 2.0) ==
          doctest::Approx(0.5 * coupling_for(1, {1.0}, 1.0)).epsilon(1e-14));
}

TEST_CASE("alternate coupling relation differs from the derived one") {
    // They coincide at eps = 0, amplitude 1, and split apart elsewhere.
    CHECK(coupling_alternate(1, {0.0}, 1.0) ==
          doctest::Approx(coupling_for(1, {0.0}, 1.0)).epsilon(1e-14));
    const double alternate = coupling_alternate(1, {1.0}, 1.0);
    const double derived = coupling_for(1, {1.0}, 1.0);
    CHECK(std::abs(alternate - derived) > 0.1);
}

TEST_CASE("residual decays at second order for smooth exponents") {
    for (auto [n, eps] : std::vector<std::pair<int, double>>{
             {1, 0.0}, {2, 0.0}, {1, 1.0}, {2, 1.0}, {1, 2.0}}) {
        const double order = linf_order(n, eps, 1.0, 512);
        CAPTURE(n);
        CAPTURE(eps);
        CHECK(order >= 1.7);
        CHECK(order <= 2.3);
    }
}

TEST_CASE("residual magnitude anchors") {
    const EigenSolution linear = build_eigenfunction(1, {0.0}, 1.0, 1024);
    CHECK(residual(linear, coupling_for(1, {0.0}, 1.0)).l_inf <= 1e-5);

    const EigenSolution cubic = build_eigenfunction(1, {1.0}, 1.0, 4096);
    CHECK(residual(cubic, coupling_for(1, {1.0}, 1.0)).l_inf <= 1e-4);
}

TEST_CASE("fractional exponents lose L-inf order at the nodes but keep L2") {
    // sin_{2,2.5} is only C^3 at its nodes, so the stencil truncation next to
    // the boundary scales as h^{1+eps}; the L2 norm averages the spike away.
    const EigenSolution coarse = build_eigenfunction(1, {0.5}, 1.0, 1024);
    const EigenSolution fine = build_eigenfunction(1, {0.5}, 1.0, 2048);
    const double c = coupling_for(1, {0.5}, 1.0);
    const double linf = std::log2(residual(coarse, c).l_inf / residual(fine, c).l_inf);
    const double l2 = std::log2(residual(coarse, c).l2 / residual(fine, c).l2);
    CHECK(linf >= 1.3);
    CHECK(linf <= 1.7);
    CHECK(l2 >= 1.7);
    CHECK(l2 <= 2.3);
}

TEST_CASE("a perturbed coupling is detected") {
    for (double eps : {0.0, 1.0}) {
        const double c_wrong = 1.1 * coupling_for(1, {eps}, 1.0);
        const EigenSolution coarse = build_eigenfunction(1, {eps}, 1.0, 512);
        const EigenSolution fine = build_eigenfunction(1, {eps}, 1.0, 2048);
        const double r_coarse = residual(coarse, c_wrong).l_inf;
        const double r_fine = residual(fine, c_wrong).l_inf;
        CHECK(r_coarse > 1e-2);
        CHECK(r_fine > 1e-2);
        CHECK(r_fine / r_coarse > 0.8);
        CHECK(r_fine / r_coarse < 1.25);
    }
}

TEST_CASE("scaling law versus the linear baseline") {
    const int m = 512;
    const double base =
        residual(build_eigenfunction(1, {0.0}, 1.0, m), coupling_for(1, {0.0}, 1.0))
            .l_inf;
    for (double eps : {0.5, 1.0, 2.0}) {
        const double r =
            residual(build_eigenfunction(1, {eps}, 1.0, m), coupling_for(1, {eps}, 1.0))
                .l_inf;
        CAPTURE(eps);
        CHECK(r <= 10.0 * base);
    }
}

TEST_CASE("negative eps excludes singular nodes from the norms") {
    // Odd grid size puts a sample exactly on the interior node of mode 2,
    // where |phi|^eps diverges for eps < 0.
    const EigenSolution sol = build_eigenfunction(2, {-0.5}, 1.0, 257);
    const ResidualReport rep = residual(sol, coupling_for(2, {-0.5}, 1.0));
    CHECK(rep.excluded_points >= 1);
    CHECK(std::isfinite(rep.l_inf));
    CHECK(std::isfinite(rep.l2));

    // Mode 1 keeps its nodes on the boundary; nothing to exclude.
    const EigenSolution clean = build_eigenfunction(1, {-0.5}, 1.0, 256);
    const ResidualReport rep1 = residual(clean, coupling_for(1, {-0.5}, 1.0));
    CHECK(rep1.excluded_points == 0);
    CHECK(std::isfinite(rep1.l_inf));
}

TEST_CASE("residual validates its input") {
    EigenSolution sol = build_eigenfunction(1, {0.0}, 1.0, 128);
    sol.values.pop_back();
    CHECK_THROWS_AS(residual(sol, 1.0), std::domain_error);
}
