#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fractel/basis.hpp"
#include "fractel/caputo.hpp"
#include "fractel/expr.hpp"
#include "fractel/tridiag.hpp"

namespace fractel {

/// Coefficients and problem functions of the time-fractional telegraph
/// equation
///   D^gamma u + gamma1 D^(gamma-1) u + gamma2 u = gamma3 u_xx + f(x, t)
/// with u(x,0) = phi1, u_t(x,0) = phi2, u(a,t) = psi1, u(b,t) = psi2.
struct ProblemSpec {
    double gamma = 1.5;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double gamma3 = 1.0;
    Expression phi1;  ///< initial value, function of x
    Expression phi2;  ///< initial velocity, function of x
    Expression psi1;  ///< left boundary value, function of t
    Expression psi2;  ///< right boundary value, function of t
    Expression f;     ///< forcing, function of (x, t)
};

/// Throws DomainError unless gamma is in (1, 2) and gamma3 is nonzero.
void validate(const ProblemSpec& p);

/// Non-fatal data checks: reports when phi1 disagrees with psi1/psi2 at the
/// corners (x, t) = (a, 0) and (b, 0) beyond 1e-8.
std::vector<std::string> compatibility_warnings(const ProblemSpec& p,
                                                const SpaceGrid& grid);

/// Uniform time discretization of [0, T] into N steps of length tau = T/N.
struct TimeMesh {
    double T = 1.0;
    int N = 0;
    double tau = 0.0;
};

TimeMesh make_mesh(double T, int N);

/// All spline coefficient levels c^0..c^n (never mutated after insertion)
/// plus the fitted initial-velocity coefficients d. The ghost level is
/// c^{-1} = c^1 - 2*tau*d wherever the scheme references level -1.
struct CoefficientHistory {
    std::vector<SplineCoefficients> levels;
    SplineCoefficients velocity;
};

struct Diagnostics {
    double nu = 0.0;
    bool condition_met = false;
    double wall_time_ms = 0.0;
};

struct SolveResult {
    Eigen::MatrixXd knot_values_per_level;  ///< (N+1) x (M+1), row n = level n
    Diagnostics diagnostics;
    CoefficientHistory history;
};

/// Interpolates g at all knots, closed with second-derivative end rows whose
/// right-hand sides are one-sided finite-difference estimates of g''.
/// Returns coefficients c_{-1}..c_{M+1}.
SplineCoefficients fit_coefficients(const std::function<double(double)>& g,
                                    const SpaceGrid& grid,
                                    const StencilConstants& s);

/// Same, for an expression in x (evaluated at t = 0).
SplineCoefficients fit_coefficients(const Expression& g, const SpaceGrid& grid,
                                    const StencilConstants& s);

/// Matrix part of the step system. Rows 1..M+1 carry the collocation triple
/// (L1, L2, L1) with L1 = (A*a1 - gamma3*a4), L2 = (A*a2 - gamma3*a5) and
/// A = alpha0 + gamma1*tau*alpha0 + gamma2; first_step doubles the plain
/// alpha0 (the ghost level re-enters u^1 in the n = 0 equation). Rows 0 and
/// M+2 are the Dirichlet closure rows (a1, a2, a1). The rhs part is zero.
BandedSystem assemble_lhs(const ProblemSpec& p, const SpaceGrid& grid,
                          const StencilConstants& s, const FractionalWeights& w,
                          bool first_step);

/// Right-hand side for the solve producing level n+1 from history levels
/// 0..n. Interior entries hold the lagged time terms, both memory sums, and
/// f(x_j, t_{n+1}); boundary entries hold psi1(t_{n+1}) and psi2(t_{n+1}).
/// Level -1 appearances use the ghost rule at coefficient level.
Eigen::VectorXd assemble_rhs(const ProblemSpec& p,
                             const CoefficientHistory& hist,
                             const StencilConstants& s,
                             const FractionalWeights& w, int n,
                             const SpaceGrid& grid, const TimeMesh& mesh);

/// Solves for level n+1 (n = hist.levels.size() - 1) and appends it to the
/// history. The weight table must cover b_0..b_n.
SplineCoefficients advance_level(const ProblemSpec& p, CoefficientHistory& hist,
                                 const SpaceGrid& grid,
                                 const StencilConstants& s,
                                 const FractionalWeights& w,
                                 const TimeMesh& mesh);

/// Full marching run: fits c^0 and d, advances N levels, and returns knot
/// values for every level with stability diagnostics (nu at beta = 0).
SolveResult march(const ProblemSpec& p, const SpaceGrid& grid,
                  const TimeMesh& mesh);

}  // namespace fractel
