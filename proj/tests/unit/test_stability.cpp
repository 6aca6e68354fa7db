#include "doctest.h"

#include <cmath>
#include <random>

#include "fractel/basis.hpp"
#include "fractel/caputo.hpp"
#include "fractel/errors.hpp"
#include "fractel/stability.hpp"

using namespace fractel;

TEST_CASE("nu reduces to 1 without damping, reaction, or diffusion") {
    const StencilConstants s = collocation_constants(0.5);
    const FractionalWeights w = weights(1.5, 1, 0.1);
    ProblemSpec p;
    p.gamma1 = 0.0;
    p.gamma2 = 0.0;
    p.gamma3 = 0.0;
    CHECK(compute_nu(p, s, w, 0.0, 0.5) == doctest::Approx(1.0));
    CHECK(compute_nu(p, s, w, 2.0, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("nu at the frozen reference point") {
    const StencilConstants s = collocation_constants(0.5);
    const FractionalWeights w = weights(1.5, 1, 0.1);
    ProblemSpec p;
    p.gamma = 1.5;
    p.gamma1 = 1.0;
    p.gamma2 = 1.0;
    p.gamma3 = 1.0;
    const double nu = compute_nu(p, s, w, 0.0, 0.5);
    CHECK(nu == doctest::Approx(1.1283568250899688).epsilon(1e-13));
    // This parameter set sits below the sufficient condition.
    CHECK_FALSE(check_condition(nu, p.gamma1, w.tau));
}

TEST_CASE("nu at beta = 0 equals the closed-form expression") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double gamma = 1.0 + 0.98 * u01(rng) + 0.01;
        const double tau = 0.01 + 0.49 * u01(rng);
        const double h = 0.05 + 1.15 * u01(rng);
        ProblemSpec p;
        p.gamma = gamma;
        p.gamma1 = 5.0 * u01(rng);
        p.gamma2 = 4.0 * u01(rng) - 2.0;
        p.gamma3 = 4.0 * u01(rng) - 2.0;
        const StencilConstants s = collocation_constants(h);
        const FractionalWeights w = weights(gamma, 1, tau);
        const double printed =
            1.0 + p.gamma1 * tau + p.gamma2 / w.alpha0 -
            (p.gamma3 / w.alpha0) * (2.0 * s.a4 + s.a5) /
                (2.0 * s.a1 + s.a2);
        CHECK(compute_nu(p, s, w, 0.0, h) ==
              doctest::Approx(printed).epsilon(1e-13));
    }
}

TEST_CASE("nu is finite and continuous across the beta scan") {
    const double h = 0.5;
    const StencilConstants s = collocation_constants(h);
    const FractionalWeights w = weights(1.5, 1, 0.1);
    ProblemSpec p;
    p.gamma1 = 1.0;
    p.gamma2 = 1.0;
    p.gamma3 = 1.0;
    double prev = compute_nu(p, s, w, 0.0, h);
    const double pi = 3.14159265358979323846;
    for (int i = 1; i <= 200; ++i) {
        const double beta = i * (pi / h) / 200.0;
        const double nu = compute_nu(p, s, w, beta, h);
        CHECK(std::isfinite(nu));
        CHECK(std::abs(nu - prev) < 0.05);
        prev = nu;
    }
}

TEST_CASE("check_condition boundary behavior") {
    CHECK(check_condition(3.0, 1.0, 0.1));
    CHECK(check_condition(2.1, 1.0, 0.1));
    CHECK_FALSE(check_condition(1.12836, 1.0, 0.1));
}

TEST_CASE("truncated recursion matches the two-term oracle") {
    FractionalWeights w;
    w.gamma = 1.5;
    w.tau = 0.1;
    w.alpha0 = 1.0;
    w.b = Eigen::VectorXd::Zero(16);
    const GrowthTrace trace = simulate_growth(2.0, 0.0, 0.1, w, 8, 1.0);
    const double expected[9] = {1.0,   1.0,   0.5, 0.0, -0.25,
                                -0.25, -0.125, 0.0, 0.0625};
    REQUIRE(trace.xi.size() == 9);
    for (int i = 0; i < 9; ++i) {
        CHECK(trace.xi(i) == doctest::Approx(expected[i]).epsilon(1e-14));
    }
}

TEST_CASE("huge nu crushes every later amplitude") {
    const FractionalWeights w = weights(1.5, 64, 0.1);
    const GrowthTrace trace = simulate_growth(1e9, 1.0, 0.1, w, 64, 1.0);
    for (int i = 1; i < trace.xi.size(); ++i) {
        CHECK(std::abs(trace.xi(i)) < 1e-6);
    }
}

TEST_CASE("verify_bound flags only violations") {
    GrowthTrace t;
    t.xi = Eigen::VectorXd::Constant(5, 0.7);
    CHECK(verify_bound(t));
    t.xi(3) = 0.7 * 2.5;
    CHECK_FALSE(verify_bound(t));
}

TEST_CASE("condition satisfied implies the bound (property sweep)") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int steps = 300;
    for (int draw = 0; draw < 30; ++draw) {
        const double gamma = 1.01 + 0.98 * u01(rng);
        const double gamma1 = 5.0 * u01(rng);
        const double tau = 0.01 + 0.19 * u01(rng);
        const double lo = 2.0 + gamma1 * tau;
        const double nu = lo + (10.0 - lo) * u01(rng);
        const FractionalWeights w = weights(gamma, steps, tau);
        const GrowthTrace trace =
            simulate_growth(nu, gamma1, tau, w, steps, 1.0);
        CHECK(verify_bound(trace));
    }
}

TEST_CASE("simulate_growth input validation") {
    const FractionalWeights w = weights(1.5, 16, 0.1);
    CHECK_THROWS_AS(simulate_growth(0.0, 1.0, 0.1, w, 8, 1.0), DomainError);
    CHECK_THROWS_AS(simulate_growth(2.5, 1.0, 0.1, w, 0, 1.0), DomainError);
    CHECK_THROWS_AS(simulate_growth(2.5, 1.0, 0.1, w, 64, 1.0), ShapeError);
}
