#include "fractel/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "fractel/errors.hpp"
#include "fractel/stability.hpp"

namespace fractel {

namespace {

void require_expressions(const ProblemSpec& p) {
    const Expression* exprs[] = {&p.phi1, &p.phi2, &p.psi1,
                                 &p.psi2, &p.f};
    const char* names[] = {"phi1", "phi2", "psi1", "psi2", "f"};
    for (int i = 0; i < 5; ++i) {
        if (exprs[i]->empty()) {
            throw DomainError(std::string("problem expression '") + names[i] +
                              "' is not set");
        }
    }
}

}  // namespace

void validate(const ProblemSpec& p) {
    if (!(p.gamma > 1.0 && p.gamma < 2.0)) {
        throw DomainError("gamma must lie in (1, 2)");
    }
    if (p.gamma3 == 0.0) {
        throw DomainError("gamma3 must be nonzero");
    }
    require_expressions(p);
}

std::vector<std::string> compatibility_warnings(const ProblemSpec& p,
                                                const SpaceGrid& grid) {
    std::vector<std::string> out;
    if (p.phi1.empty() || p.psi1.empty() || p.psi2.empty()) return out;
    const double tol = 1e-8;
    const double left = eval(p.phi1, grid.a, 0.0) - eval(p.psi1, 0.0, 0.0);
    const double right = eval(p.phi1, grid.b, 0.0) - eval(p.psi2, 0.0, 0.0);
    char buf[160];
    if (!(std::abs(left) <= tol)) {
        std::snprintf(buf, sizeof(buf),
                      "phi1(a) and psi1(0) disagree by %.3e at x = %.17g",
                      left, grid.a);
        out.emplace_back(buf);
    }
    if (!(std::abs(right) <= tol)) {
        std::snprintf(buf, sizeof(buf),
                      "phi1(b) and psi2(0) disagree by %.3e at x = %.17g",
                      right, grid.b);
        out.emplace_back(buf);
    }
    return out;
}

TimeMesh make_mesh(double T, int N) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw DomainError("final time T must be positive and finite");
    }
    if (N < 1) throw DomainError("time step count N must be at least 1");
    return TimeMesh{T, N, T / N};
}

SplineCoefficients fit_coefficients(const std::function<double(double)>& g,
                                    const SpaceGrid& grid,
                                    const StencilConstants& s) {
    const int M = grid.M;
    const int n = M + 3;
    Eigen::VectorXd gv(M + 1);
    for (int j = 0; j <= M; ++j) gv(j) = g(grid.knots(j));

    const double h2 = grid.h * grid.h;
    const double dda =
        (2.0 * gv(0) - 5.0 * gv(1) + 4.0 * gv(2) - gv(3)) / h2;
    const double ddb =
        (2.0 * gv(M) - 5.0 * gv(M - 1) + 4.0 * gv(M - 2) - gv(M - 3)) / h2;

    BandedSystem sys;
    sys.sub = Eigen::VectorXd::Zero(n);
    sys.diag = Eigen::VectorXd::Zero(n);
    sys.sup = Eigen::VectorXd::Zero(n);
    sys.rhs = Eigen::VectorXd::Zero(n);

    sys.diag(0) = s.a4;
    sys.sup(0) = s.a5;
    sys.corner_top = s.a4;
    sys.rhs(0) = dda;
    for (int j = 0; j <= M; ++j) {
        sys.sub(j + 1) = s.a1;
        sys.diag(j + 1) = s.a2;
        sys.sup(j + 1) = s.a1;
        sys.rhs(j + 1) = gv(j);
    }
    sys.sub(n - 1) = s.a5;
    sys.diag(n - 1) = s.a4;
    sys.corner_bottom = s.a4;
    sys.rhs(n - 1) = ddb;

    return solve_banded(sys);
}

SplineCoefficients fit_coefficients(const Expression& g, const SpaceGrid& grid,
                                    const StencilConstants& s) {
    if (g.empty()) throw DomainError("cannot fit an empty expression");
    return fit_coefficients(
        [&g](double x) { return eval(g, x, 0.0); }, grid, s);
}

BandedSystem assemble_lhs(const ProblemSpec& p, const SpaceGrid& grid,
                          const StencilConstants& s, const FractionalWeights& w,
                          bool first_step) {
    const int M = grid.M;
    const int n = M + 3;
    const double a0 = w.alpha0;
    const double tau = w.tau;
    const double lead = first_step ? 2.0 * a0 : a0;
    const double A = lead + p.gamma1 * tau * a0 + p.gamma2;
    const double L1 = A * s.a1 - p.gamma3 * s.a4;
    const double L2 = A * s.a2 - p.gamma3 * s.a5;

    BandedSystem sys;
    sys.sub = Eigen::VectorXd::Zero(n);
    sys.diag = Eigen::VectorXd::Zero(n);
    sys.sup = Eigen::VectorXd::Zero(n);
    sys.rhs = Eigen::VectorXd::Zero(n);

    sys.diag(0) = s.a1;
    sys.sup(0) = s.a2;
    sys.corner_top = s.a1;
    for (int j = 0; j <= M; ++j) {
        sys.sub(j + 1) = L1;
        sys.diag(j + 1) = L2;
        sys.sup(j + 1) = L1;
    }
    sys.sub(n - 1) = s.a2;
    sys.diag(n - 1) = s.a1;
    sys.corner_bottom = s.a1;

    return sys;
}

Eigen::VectorXd assemble_rhs(const ProblemSpec& p,
                             const CoefficientHistory& hist,
                             const StencilConstants& s,
                             const FractionalWeights& w, int n,
                             const SpaceGrid& grid, const TimeMesh& mesh) {
    const int M = grid.M;
    if (n < 0 || static_cast<int>(hist.levels.size()) < n + 1) {
        throw ShapeError("history does not reach level n");
    }
    if (w.b.size() < n + 1) {
        throw ShapeError("weight table too short for level n");
    }
    if (hist.velocity.size() != M + 3) {
        throw ShapeError("velocity coefficients missing or mis-sized");
    }

    const double a0 = w.alpha0;
    const double tau = w.tau;
    const double tnext = (n + 1) * mesh.tau;
    const double A2 = 2.0 * a0 + p.gamma1 * tau * a0;

    std::vector<Eigen::VectorXd> U(n + 1);
    for (int m = 0; m <= n; ++m) U[m] = knot_u(hist.levels[m], s);
    const Eigen::VectorXd phi2v = knot_u(hist.velocity, s);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M + 3);
    rhs(0) = eval(p.psi1, 0.0, tnext);
    rhs(M + 2) = eval(p.psi2, 0.0, tnext);

    if (n == 0) {
        for (int j = 0; j <= M; ++j) {
            rhs(j + 1) = A2 * U[0](j) + 2.0 * tau * a0 * phi2v(j) +
                         eval(p.f, grid.knots(j), tnext);
        }
        return rhs;
    }

    // Level -1 enters only through the k = n memory term; substitute the
    // ghost values u^{-1} = u^1 - 2*tau*phi2 there.
    const Eigen::VectorXd ghost = U[1] - 2.0 * tau * phi2v;
    Eigen::VectorXd s1 = Eigen::VectorXd::Zero(M + 1);
    Eigen::VectorXd s2 = Eigen::VectorXd::Zero(M + 1);
    for (int k = 1; k <= n; ++k) {
        const double bk = w.b(k);
        const Eigen::VectorXd& lo = (k == n) ? ghost : U[n - 1 - k];
        s1 += bk * (U[n + 1 - k] - U[n - k]);
        s2 += bk * (U[n + 1 - k] - 2.0 * U[n - k] + lo);
    }

    for (int j = 0; j <= M; ++j) {
        rhs(j + 1) = A2 * U[n](j) - a0 * U[n - 1](j) -
                     p.gamma1 * tau * a0 * s1(j) - a0 * s2(j) +
                     eval(p.f, grid.knots(j), tnext);
    }
    return rhs;
}

SplineCoefficients advance_level(const ProblemSpec& p, CoefficientHistory& hist,
                                 const SpaceGrid& grid,
                                 const StencilConstants& s,
                                 const FractionalWeights& w,
                                 const TimeMesh& mesh) {
    if (hist.levels.empty()) {
        throw ShapeError("history must contain the initial level");
    }
    const int n = static_cast<int>(hist.levels.size()) - 1;
    BandedSystem sys = assemble_lhs(p, grid, s, w, n == 0);
    sys.rhs = assemble_rhs(p, hist, s, w, n, grid, mesh);
    SplineCoefficients c = solve_banded(sys);
    hist.levels.push_back(c);
    return c;
}

SolveResult march(const ProblemSpec& p, const SpaceGrid& grid,
                  const TimeMesh& mesh) {
    const auto t_start = std::chrono::steady_clock::now();
    validate(p);
    const StencilConstants s = collocation_constants(grid.h);
    const FractionalWeights w =
        weights(p.gamma, mesh.N > 1 ? mesh.N - 1 : 1, mesh.tau);

    SolveResult out;
    out.history.levels.reserve(mesh.N + 1);
    out.history.levels.push_back(fit_coefficients(p.phi1, grid, s));
    out.history.velocity = fit_coefficients(p.phi2, grid, s);

    for (int n = 0; n < mesh.N; ++n) {
        advance_level(p, out.history, grid, s, w, mesh);
    }

    out.knot_values_per_level.resize(mesh.N + 1, grid.M + 1);
    for (int m = 0; m <= mesh.N; ++m) {
        out.knot_values_per_level.row(m) = knot_u(out.history.levels[m], s);
    }

    out.diagnostics.nu = compute_nu(p, s, w, 0.0, grid.h);
    out.diagnostics.condition_met =
        check_condition(out.diagnostics.nu, p.gamma1, mesh.tau);
    out.diagnostics.wall_time_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t_start)
            .count();
    return out;
}

}  // namespace fractel
