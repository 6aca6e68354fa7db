#include "doctest.h"

#include <cmath>

#include "fractel/errors.hpp"
#include "fractel/solver.hpp"
#include "fractel/stability.hpp"
#include "fractel/verify.hpp"

using namespace fractel;

namespace {

ProblemSpec zero_problem() {
    ProblemSpec p;
    p.gamma = 1.5;
    p.gamma1 = 1.0;
    p.gamma2 = 1.0;
    p.gamma3 = 1.0;
    p.phi1 = parse("0");
    p.phi2 = parse("0");
    p.psi1 = parse("0");
    p.psi2 = parse("0");
    p.f = parse("0");
    return p;
}

}  // namespace

TEST_CASE("make_mesh basics and validation") {
    const TimeMesh m = make_mesh(1.0, 10);
    CHECK(m.tau == doctest::Approx(0.1));
    CHECK(m.N == 10);
    CHECK_THROWS_AS(make_mesh(1.0, 0), DomainError);
    CHECK_THROWS_AS(make_mesh(0.0, 10), DomainError);
    CHECK_THROWS_AS(make_mesh(-2.0, 10), DomainError);
}

TEST_CASE("validate rejects bad problems") {
    ProblemSpec p = zero_problem();
    CHECK_NOTHROW(validate(p));
    p.gamma = 1.0;
    CHECK_THROWS_AS(validate(p), DomainError);
    p.gamma = 1.5;
    p.gamma3 = 0.0;
    CHECK_THROWS_AS(validate(p), DomainError);
    p.gamma3 = 1.0;
    p.f = Expression();
    CHECK_THROWS_AS(validate(p), DomainError);
}

TEST_CASE("compatibility warnings fire only on corner mismatches") {
    const SpaceGrid grid = make_grid(0.0, 1.0, 8);
    ProblemSpec p = zero_problem();
    CHECK(compatibility_warnings(p, grid).empty());

    p.phi1 = parse("x");
    p.psi2 = parse("1+t");  // psi2(0) = 1 = phi1(b): compatible
    CHECK(compatibility_warnings(p, grid).empty());

    p.psi2 = parse("2");
    CHECK(compatibility_warnings(p, grid).size() == 1);

    p.psi1 = parse("1");
    CHECK(compatibility_warnings(p, grid).size() == 2);
}

TEST_CASE("fit_coefficients interpolates and matches the end-row data") {
    const SpaceGrid grid = make_grid(0.0, 2.0, 8);
    const StencilConstants s = collocation_constants(grid.h);
    const auto g = [](double x) { return std::sin(x) + 0.5 * x; };
    const SplineCoefficients c = fit_coefficients(g, grid, s);
    REQUIRE(c.size() == grid.M + 3);

    const KnotValues kv = knot_values(c, s);
    for (int j = 0; j <= grid.M; ++j) {
        CHECK(kv.u(j) == doctest::Approx(g(grid.knots(j))).epsilon(1e-12));
    }
    const double h2 = grid.h * grid.h;
    const double dda = (2.0 * g(grid.knots(0)) - 5.0 * g(grid.knots(1)) +
                        4.0 * g(grid.knots(2)) - g(grid.knots(3))) /
                       h2;
    CHECK(kv.uxx(0) == doctest::Approx(dda).epsilon(1e-10));

    const SplineCoefficients c2 =
        fit_coefficients(parse("sin(x) + 0.5*x"), grid, s);
    CHECK((c - c2).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("assemble_lhs carries the collocation triples and Dirichlet rows") {
    const SpaceGrid grid = make_grid(0.0, 1.0, 8);
    const StencilConstants s = collocation_constants(grid.h);
    ProblemSpec p = zero_problem();
    const TimeMesh mesh = make_mesh(1.0, 10);
    const FractionalWeights w = weights(p.gamma, mesh.N, mesh.tau);

    const BandedSystem rest = assemble_lhs(p, grid, s, w, false);
    REQUIRE(rest.size() == grid.M + 3);
    const double A = w.alpha0 + p.gamma1 * w.tau * w.alpha0 + p.gamma2;
    CHECK(rest.diag(3) ==
          doctest::Approx(A * s.a2 - p.gamma3 * s.a5).epsilon(1e-14));
    CHECK(rest.sub(3) ==
          doctest::Approx(A * s.a1 - p.gamma3 * s.a4).epsilon(1e-14));
    CHECK(rest.diag(0) == doctest::Approx(s.a1));
    CHECK(rest.sup(0) == doctest::Approx(s.a2));
    CHECK(rest.corner_top == doctest::Approx(s.a1));
    CHECK(rest.corner_bottom == doctest::Approx(s.a1));

    const BandedSystem first = assemble_lhs(p, grid, s, w, true);
    CHECK(first.diag(3) - rest.diag(3) ==
          doctest::Approx(w.alpha0 * s.a2).epsilon(1e-12));
}

TEST_CASE("zero problem stays identically zero") {
    const ProblemSpec p = zero_problem();
    const SpaceGrid grid = make_grid(0.0, 1.0, 16);
    const TimeMesh mesh = make_mesh(1.0, 16);
    const SolveResult res = march(p, grid, mesh);
    CHECK(res.knot_values_per_level.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(res.history.levels.size() == 17);
}

TEST_CASE("march reproduces the manufactured solution to discretization accuracy") {
    const MmsCase mc = mms_problem(1.5, 1.0, 1.0, 1.0);
    const SpaceGrid grid = make_grid(0.0, 1.0, 16);
    const TimeMesh mesh = make_mesh(1.0, 16);
    const SolveResult res = march(mc.problem, grid, mesh);
    const Eigen::VectorXd last =
        res.knot_values_per_level.row(mesh.N).transpose();
    const ErrorReport rep = error_norms(last, mc.exact, 1.0, grid);
    // Oracle run at (16, 16) measured L_inf = 9.196e-4.
    CHECK(rep.l_inf < 5e-3);
    CHECK(rep.l_inf > 1e-5);
    CHECK(rep.l2 < 1.1 * rep.l_inf);

    // march's own diagnostics agree with the stability module.
    const StencilConstants s = collocation_constants(grid.h);
    const FractionalWeights w = weights(mc.problem.gamma, 4, mesh.tau);
    CHECK(res.diagnostics.nu ==
          doctest::Approx(compute_nu(mc.problem, s, w, 0.0, grid.h))
              .epsilon(1e-13));
    CHECK(res.diagnostics.condition_met ==
          check_condition(res.diagnostics.nu, mc.problem.gamma1, mesh.tau));
    CHECK(res.diagnostics.wall_time_ms >= 0.0);
}

TEST_CASE("advance_level restarted from a stored history is consistent") {
    const MmsCase mc = mms_problem_ghost(1.5, 1.0, 0.0, 1.0);
    const SpaceGrid grid = make_grid(0.0, 1.0, 8);
    const TimeMesh mesh = make_mesh(1.0, 8);
    const SolveResult full = march(mc.problem, grid, mesh);

    const StencilConstants s = collocation_constants(grid.h);
    const FractionalWeights w = weights(mc.problem.gamma, mesh.N - 1, mesh.tau);
    CoefficientHistory partial;
    partial.velocity = full.history.velocity;
    for (int m = 0; m <= 4; ++m) {
        partial.levels.push_back(full.history.levels[m]);
    }
    const SplineCoefficients next =
        advance_level(mc.problem, partial, grid, s, w, mesh);
    CHECK((next - full.history.levels[5]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assemble_rhs validates history shape") {
    const ProblemSpec p = zero_problem();
    const SpaceGrid grid = make_grid(0.0, 1.0, 8);
    const StencilConstants s = collocation_constants(grid.h);
    const TimeMesh mesh = make_mesh(1.0, 8);
    const FractionalWeights w = weights(p.gamma, mesh.N, mesh.tau);
    CoefficientHistory hist;  // empty
    CHECK_THROWS_AS(assemble_rhs(p, hist, s, w, 0, grid, mesh), ShapeError);
    CHECK_THROWS_AS(advance_level(p, hist, grid, s, w, mesh), ShapeError);
}
