#pragma once

#include <functional>

#include <Eigen/Core>

#include "fractel/basis.hpp"
#include "fractel/expr.hpp"
#include "fractel/solver.hpp"

namespace fractel {

/// Discrete error norms of one solution level, plus room for the run sizes
/// and timing a convergence harness wants to carry alongside.
struct ErrorReport {
    double l_inf = 0.0;
    double l2 = 0.0;
    int M = 0;
    int N = 0;
    double runtime_ms = 0.0;
};

/// Closed-form Caputo derivative of u(t) = t^p at order `order` > 0:
///   Gamma(p+1) / Gamma(p+1-order) * t^(p-order).
/// Integer orders take the classical-derivative meaning. Nonnegative integer
/// powers p <= ceil(order)-1 are annihilated (returns 0); other powers below
/// ceil(order)-1 make the defining integral divergent and throw DomainError,
/// as does t = 0 whenever the exponent p-order is negative.
double exact_caputo_power(double order, double p, double t);

/// Caputo derivative of a smooth u at non-integer order in (0,1) or (1,2),
/// evaluated by adaptive Gauss-Kronrod quadrature with singularity-removing
/// substitutions. u must be smooth on a neighborhood of [0, t]; derivatives
/// are formed by finite differences of u itself. Throws AccuracyError when
/// the error estimate still exceeds tol after the panel budget is spent.
double caputo_quadrature(const std::function<double(double)>& u, double order,
                         double t, double tol);

/// Same, for a single-variable expression in t (x is bound to 0).
double caputo_quadrature(const Expression& u, double order, double t,
                         double tol);

/// Max and L2 norms of numeric - exact over all knots; numeric holds knot
/// values of one time level, exact is evaluated at (x_j, t). The L2 norm is
/// sqrt(h * sum of squares). Leaves N and runtime_ms zero.
ErrorReport error_norms(const Eigen::VectorXd& numeric,
                        const std::function<double(double, double)>& exact,
                        double t, const SpaceGrid& grid);

ErrorReport error_norms(const Eigen::VectorXd& numeric,
                        const Expression& exact, double t,
                        const SpaceGrid& grid);

/// log(e_coarse/e_fine) / log(ratio); both errors must be positive and the
/// refinement ratio greater than 1.
double observed_order(double e_coarse, double e_fine, double ratio = 2.0);

/// A manufactured problem together with its exact solution.
struct MmsCase {
    ProblemSpec problem;
    Expression exact;
};

/// Manufactured solution u = t^2 sin(pi x) on the unit interval: forcing
/// chosen so u solves the equation exactly, boundaries and both initial
/// conditions zero.
MmsCase mms_problem(double gamma, double gamma1, double gamma2, double gamma3);

/// Variant u = (t^2 + t) sin(pi x) with nonzero initial velocity, which
/// exercises the ghost-level substitution.
MmsCase mms_problem_ghost(double gamma, double gamma1, double gamma2,
                          double gamma3);

}  // namespace fractel
