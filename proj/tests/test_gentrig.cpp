#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "nonlocal/gentrig.hpp"
#include "nonlocal/quadrature.hpp"

using namespace nonlocal;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent reference values for pi_{p,q}, from an external special-function
// implementation of the Gamma formula.
constexpr double kPi23 = 2.8043642106509075;
constexpr double kPi2_1_1 = 3.85712838725185;
}  // namespace

TEST_CASE("pi_pq_gamma closed forms") {
    CHECK(pi_pq_gamma({2.0, 2.0}) == doctest::Approx(kPi).epsilon(1e-14));
    // 2 * int_0^1 (1-t)^{-1/2} dt = 4
    CHECK(pi_pq_gamma({2.0, 1.0}) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(pi_pq_gamma({2.0, 3.0}) == doctest::Approx(kPi23).epsilon(1e-12));
    CHECK(pi_pq_gamma({2.0, 1.1}) == doctest::Approx(kPi2_1_1).epsilon(1e-12));
}

TEST_CASE("pi_pq_gamma rejects invalid exponents") {
    CHECK_THROWS_AS(pi_pq_gamma({1.0, 2.0}), std::domain_error);
    CHECK_THROWS_AS(pi_pq_gamma({0.5, 2.0}), std::domain_error);
    CHECK_THROWS_AS(pi_pq_gamma({2.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(pi_pq_gamma({2.0, -1.0}), std::domain_error);
    CHECK_THROWS_AS(pi_pq_gamma({std::nan(""), 2.0}), std::domain_error);
}

TEST_CASE("pi_pq_quadrature known values") {
    CHECK(std::abs(pi_pq_quadrature({2.0, 2.0}, 1e-10) - kPi) <= 1e-10);
    CHECK(std::abs(pi_pq_quadrature({2.0, 1.0}, 1e-10) - 4.0) <= 1e-10);
    CHECK_THROWS_AS(pi_pq_quadrature({2.0, 2.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(pi_pq_quadrature({2.0, 2.0}, -1e-8), std::domain_error);
}

TEST_CASE("gamma formula and quadrature agree across the exponent grid") {
    for (double p : {1.5, 2.0, 3.0}) {
        for (double q : {1.2, 2.0, 3.0, 4.0}) {
            const PQParams pq{p, q};
            const double a = pi_pq_gamma(pq);
            const double b = pi_pq_quadrature(pq, 1e-9);
            CAPTURE(p);
            CAPTURE(q);
            CHECK(std::abs(a - b) <= 1e-8);
        }
    }
}

TEST_CASE("F_pq closed forms and monotonicity") {
    const PQParams circle{2.0, 2.0};
    CHECK(std::abs(F_pq(circle, 1.0, 1e-11) - kPi / 2) <= 1e-10);
    CHECK(std::abs(F_pq(circle, 0.5, 1e-11) - kPi / 6) <= 1e-10);
    CHECK(F_pq(circle, 0.0, 1e-11) == 0.0);

    // q = 1 has the antiderivative 2(1 - sqrt(1-s)).
    const PQParams parabolic{2.0, 1.0};
    for (int i = 0; i <= 20; ++i) {
        const double s = i / 20.0;
        const double expected = 2.0 * (1.0 - std::sqrt(1.0 - s));
        CHECK(std::abs(F_pq(parabolic, s, 1e-11) - expected) <= 1e-10);
    }

    const PQParams generic{2.0, 3.0};
    double prev = -1.0;
    for (int i = 0; i <= 40; ++i) {
        const double v = F_pq(generic, i / 40.0, 1e-11);
        CHECK(v > prev);
        prev = v;
    }

    CHECK_THROWS_AS(F_pq(circle, -0.1, 1e-10), std::domain_error);
    CHECK_THROWS_AS(F_pq(circle, 1.1, 1e-10), std::domain_error);
}

TEST_CASE("sin_pq reduces to sine at (2,2)") {
    const PQParams pq{2.0, 2.0};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double theta = -2.0 * kPi + 4.0 * kPi * i / 999.0;
        worst = std::max(worst, std::abs(sin_pq(pq, theta) - std::sin(theta)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("sin_pq closed form at q = 1") {
    const PQParams pq{2.0, 1.0};
    // sin_{2,1}(theta) = theta - theta^2/4 on [0, 2] (quarter period 2).
    for (int i = 0; i <= 50; ++i) {
        const double theta = 2.0 * i / 50.0;
        CHECK(std::abs(sin_pq(pq, theta) - (theta - theta * theta / 4.0)) <= 1e-12);
    }
    // Reflection across the quarter period: sin(4 - theta) branch on [2, 4].
    for (double theta : std::vector<double>{2.5, 3.0, 3.9}) {
        const double mirrored = 4.0 - theta;
        CHECK(std::abs(sin_pq(pq, theta) - (mirrored - mirrored * mirrored / 4.0)) <=
              1e-12);
    }
}

TEST_CASE("sin_pq hits one at the quarter period") {
    for (double q : {1.0, 1.7, 2.0, 3.0, 12.0}) {
        const PQParams pq{2.0, q};
        CHECK(sin_pq(pq, 0.5 * pi_pq_gamma(pq)) == 1.0);
    }
    const PQParams other{3.0, 2.5};
    CHECK(sin_pq(other, 0.5 * pi_pq_gamma(other)) == 1.0);
}

TEST_CASE("sin_pq odd symmetry is exact") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> angles(-15.0, 15.0);
    for (double q : {1.1, 2.0, 3.7}) {
        const PQParams pq{2.0, q};
        for (int i = 0; i < 50; ++i) {
            const double theta = angles(rng);
            CHECK(sin_pq(pq, -theta) == -sin_pq(pq, theta));
        }
    }
}

TEST_CASE("sin_pq periodicity") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> angles(-20.0, 20.0);
    for (double q : {1.2, 2.5, 4.0}) {
        const PQParams pq{2.0, q};
        const double period = 2.0 * pi_pq_gamma(pq);
        for (int i = 0; i < 100; ++i) {
            const double theta = angles(rng);
            CHECK(std::abs(sin_pq(pq, theta + period) - sin_pq(pq, theta)) <= 1e-9);
        }
    }
}

TEST_CASE("sin_pq strictly increases on the first quarter") {
    for (double q : {1.1, 3.0}) {
        const PQParams pq{2.0, q};
        const double quarter = 0.5 * pi_pq_gamma(pq);
        double prev = -1.0;
        for (int i = 0; i <= 200; ++i) {
            const double v = sin_pq(pq, quarter * i / 200.0);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("cos_pq closed forms") {
    CHECK(cos_pq({2.0, 2.0}, 0.0) == 1.0);
    const PQParams pq{2.0, 1.0};
    // Derivative of theta - theta^2/4.
    for (int i = 0; i <= 40; ++i) {
        const double theta = 2.0 * i / 40.0;
        CHECK(std::abs(cos_pq(pq, theta) - (1.0 - theta / 2.0)) <= 1e-12);
    }
}

TEST_CASE("cos_pq matches the derivative of sin_pq") {
    // Central differences away from quarter-period multiples.
    const double step = 1e-5;
    for (PQParams pq : std::vector<PQParams>{{2.0, 1.5}, {2.0, 3.0}, {3.0, 2.5}}) {
        const double quarter = 0.5 * pi_pq_gamma(pq);
        for (int i = 1; i <= 9; ++i) {
            const double theta = 4.0 * quarter * i / 10.0 + 0.05;
            const double fd =
                (sin_pq(pq, theta + step) - sin_pq(pq, theta - step)) / (2.0 * step);
            CAPTURE(pq.p);
            CAPTURE(pq.q);
            CAPTURE(theta);
            CHECK(std::abs(cos_pq(pq, theta) - fd) <= 1e-6);
        }
    }
}

TEST_CASE("generalized identity |cos|^p + |sin|^q = 1") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> angles(-10.0, 10.0);
    for (double q : {1.1, 2.0, 3.0, 12.0}) {
        const PQParams pq{2.0, q};
        for (int i = 0; i < 1000; ++i) {
            const double theta = angles(rng);
            const GenTrigEval ev = eval_pq(pq, theta);
            const double identity = std::pow(std::abs(ev.cos_value), pq.p) +
                                    std::pow(std::abs(ev.sin_value), pq.q);
            CHECK(std::abs(identity - 1.0) <= 1e-8);
        }
    }
    // Not only at p = 2.
    const PQParams pq{3.5, 1.3};
    for (int i = 0; i < 100; ++i) {
        const double theta = angles(rng);
        const GenTrigEval ev = eval_pq(pq, theta);
        const double identity = std::pow(std::abs(ev.cos_value), pq.p) +
                                std::pow(std::abs(ev.sin_value), pq.q);
        CHECK(std::abs(identity - 1.0) <= 1e-8);
    }
}

TEST_CASE("eval_pq is consistent with the scalar entry points") {
    const PQParams pq{2.0, 2.7};
    for (double theta : std::vector<double>{-3.4, -0.2, 0.0, 0.9, 2.1, 5.9, 11.0}) {
        const GenTrigEval ev = eval_pq(pq, theta);
        CHECK(ev.sin_value == sin_pq(pq, theta));
        CHECK(ev.cos_value == cos_pq(pq, theta));
        CHECK(ev.quarter_period == doctest::Approx(0.5 * pi_pq_gamma(pq)).epsilon(1e-15));
        CHECK(ev.theta == theta);
    }
    CHECK_THROWS_AS(eval_pq(pq, 1.0, 0.0), std::domain_error);
}

TEST_CASE("evaluation is safe under concurrent use") {
    const PQParams pq{2.0, 2.6};
    std::vector<double> serial(64);
    for (int i = 0; i < 64; ++i) serial[i] = sin_pq(pq, 0.37 * i);

    std::vector<std::vector<double>> parallel(4, std::vector<double>(64));
    std::vector<std::thread> pool;
    for (auto& slot : parallel)
        pool.emplace_back([&pq, &slot] {
            for (int i = 0; i < 64; ++i) slot[i] = sin_pq(pq, 0.37 * i);
        });
    for (auto& t : pool) t.join();
    for (const auto& slot : parallel) CHECK(slot == serial);
}

TEST_CASE("cos_pq sign pattern over a full period") {
    const PQParams pq{2.0, 3.0};
    const double period = 2.0 * pi_pq_gamma(pq);
    const double quarter = period / 4.0;
    CHECK(cos_pq(pq, 0.1 * quarter) > 0.0);
    CHECK(cos_pq(pq, 1.5 * quarter) < 0.0);
    CHECK(cos_pq(pq, 2.5 * quarter) < 0.0);
    CHECK(cos_pq(pq, 3.5 * quarter) > 0.0);
}
