#include "fractel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>
#include <vector>

#include "fractel/errors.hpp"
#include "fractel/gammafn.hpp"

namespace fractel {

namespace {

using Fn = std::function<double(double)>;

/// Fornberg finite-difference weights for the m-th derivative at z over the
/// given nodes (at most 9); fills w[0..n_nodes-1].
void fd_weights(double z, const double* x, int n_nodes, int m, double* w) {
    constexpr int kMax = 9;
    double d[kMax][kMax][3] = {};
    d[0][0][0] = 1.0;
    double c1 = 1.0;
    const int n = n_nodes - 1;
    for (int i = 1; i <= n; ++i) {
        double c2 = 1.0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            for (int k = 0; k <= std::min(i, m); ++k) {
                d[i][j][k] = ((x[i] - z) * d[i - 1][j][k] -
                              (k > 0 ? k * d[i - 1][j][k - 1] : 0.0)) /
                             c3;
            }
        }
        for (int k = 0; k <= std::min(i, m); ++k) {
            d[i][i][k] = c1 / c2 *
                         ((k > 0 ? k * d[i - 1][i - 1][k - 1] : 0.0) -
                          (x[i - 1] - z) * d[i - 1][i - 1][k]);
        }
        c1 = c2;
    }
    for (int j = 0; j <= n; ++j) w[j] = d[n][j][m];
}

// 15-point Gauss-Kronrod pair.
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759,
                            0.864864423359769, 0.741531185599394,
                            0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979,
                            0.104790010322250, 0.140653259715525,
                            0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const Fn& f, double a, double b) {
    const double hc = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double fk = 0.0;
    double fg = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double v1 = f(mid - hc * kXgk[i]);
        const double v2 = f(mid + hc * kXgk[i]);
        fk += kWgk[i] * (v1 + v2);
        if (i % 2 == 1) fg += kWg[i / 2] * (v1 + v2);
    }
    const double vm = f(mid);
    fk += kWgk[7] * vm;
    fg += kWg[3] * vm;
    return {fk * hc, std::abs(fk - fg) * hc};
}

struct Panel {
    double error;
    double a;
    double b;
    double value;
    bool operator<(const Panel& o) const { return error < o.error; }
};

constexpr int kMaxPanels = 2000;

/// Greedy worst-panel-first adaptive integration of f over [a, b].
PanelEstimate adaptive(const Fn& f, double a, double b, double tol) {
    if (b <= a) return {0.0, 0.0};
    PanelEstimate first = gk15(f, a, b);
    if (!std::isfinite(first.value)) {
        throw AccuracyError("non-finite integrand sample");
    }
    std::priority_queue<Panel> heap;
    heap.push({first.error, a, b, first.value});
    double total = first.value;
    double est = first.error;
    int panels = 1;
    while (est > tol && panels < kMaxPanels) {
        const Panel p = heap.top();
        heap.pop();
        const double pm = 0.5 * (p.a + p.b);
        const PanelEstimate l = gk15(f, p.a, pm);
        const PanelEstimate r = gk15(f, pm, p.b);
        if (!std::isfinite(l.value) || !std::isfinite(r.value)) {
            throw AccuracyError("non-finite integrand sample");
        }
        total += l.value + r.value - p.value;
        est += l.error + r.error - p.error;
        heap.push({l.error, p.a, pm, l.value});
        heap.push({r.error, pm, p.b, r.value});
        panels += 2;
    }
    return {total, est};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

double exact_caputo_power(double order, double p, double t) {
    if (!(order > 0.0) || !std::isfinite(order)) {
        throw DomainError("derivative order must be positive");
    }
    if (!std::isfinite(p)) throw DomainError("power must be finite");
    if (!(t >= 0.0)) throw DomainError("t must be nonnegative");
    const double n = std::ceil(order);
    const bool integer_power = p >= 0.0 && p == std::floor(p);
    if (integer_power && p <= n - 1.0) return 0.0;
    if (!(p > n - 1.0)) {
        throw DomainError("defining integral diverges for this power");
    }
    const double expo = p - order;
    if (t == 0.0) {
        if (expo > 0.0) return 0.0;
        if (expo == 0.0) return gamma_fn(p + 1.0);
        throw DomainError("derivative diverges at t = 0");
    }
    return gamma_fn(p + 1.0) / gamma_fn(p + 1.0 - order) * std::pow(t, expo);
}

double caputo_quadrature(const Fn& u, double order, double t, double tol) {
    if (!(order > 0.0 && order < 2.0) || order == std::floor(order)) {
        throw DomainError("order must be non-integer in (0, 1) or (1, 2)");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("t must be nonnegative and finite");
    }
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (t == 0.0) return 0.0;

    const int n = static_cast<int>(std::ceil(order));
    const double mu = n - order;
    const double scale = std::max(t, 1.0);
    const double drho = 6e-3 * std::sqrt(scale);
    const double ds = 1.5e-3 * scale;
    const double c = 0.5 * t;
    const double rc = std::sqrt(c);

    // d/drho of U(rho) = u(rho^2), one-sided near rho = 0 so samples stay in
    // [0, t]; the rho substitution removes the 1/sqrt singularity of u'(s).
    const auto uprime = [&](double rho) {
        const double base = std::max(0.0, rho - 3.0 * drho);
        double xs[7];
        double w[7];
        for (int k = 0; k < 7; ++k) xs[k] = base + k * drho;
        fd_weights(rho, xs, 7, 1, w);
        double acc = 0.0;
        for (int k = 0; k < 7; ++k) acc += w[k] * u(xs[k] * xs[k]);
        return acc;
    };

    double left_val = 0.0;
    double left_err = 0.0;
    if (n == 1) {
        const PanelEstimate e = adaptive(
            [&](double rho) {
                return uprime(rho) * std::pow(t - rho * rho, mu - 1.0);
            },
            0.0, rc, 0.25 * tol);
        left_val = e.value;
        left_err = e.error;
    } else {
        // Integrate u'' K by parts so only first differences of U appear:
        //   int_0^c u'' K ds = u'(c) K(c) - u'(0) K(0)
        //                      - (1-mu) int_0^sqrt(c) U'(rho) (t-rho^2)^(mu-2) drho
        const double up_c = (u(c - 2.0 * ds) - 8.0 * u(c - ds) +
                             8.0 * u(c + ds) - u(c + 2.0 * ds)) /
                            (12.0 * ds);
        const auto d2u0 = [&](double d0) {
            double xs[9];
            double w[9];
            for (int k = 0; k < 9; ++k) xs[k] = k * d0;
            fd_weights(0.0, xs, 9, 2, w);
            double acc = 0.0;
            for (int k = 0; k < 9; ++k) acc += w[k] * u(xs[k] * xs[k]);
            return acc;
        };
        // u'(0) = U''(0)/2, Richardson-extrapolated across two stencil widths.
        const double d0 =
            std::min(0.03 * std::sqrt(scale), 0.1125 * std::sqrt(t));
        const double up_0 =
            0.5 * (256.0 * d2u0(0.5 * d0) - d2u0(d0)) / 255.0;
        const PanelEstimate e = adaptive(
            [&](double rho) {
                return uprime(rho) * std::pow(t - rho * rho, mu - 2.0);
            },
            0.0, rc, 0.25 * tol);
        left_val = up_c * std::pow(t - c, mu - 1.0) -
                   up_0 * std::pow(t, mu - 1.0) - (1.0 - mu) * e.value;
        left_err = (1.0 - mu) * e.error;
    }

    // Right piece: s = t - sigma^(1/mu) flattens the kernel to a constant.
    const auto deriv_c = [&](double s) {
        if (n == 1) {
            return (u(s - 2.0 * ds) - 8.0 * u(s - ds) + 8.0 * u(s + ds) -
                    u(s + 2.0 * ds)) /
                   (12.0 * ds);
        }
        return (-u(s - 2.0 * ds) + 16.0 * u(s - ds) - 30.0 * u(s) +
                16.0 * u(s + ds) - u(s + 2.0 * ds)) /
               (12.0 * ds * ds);
    };
    const PanelEstimate right = adaptive(
        [&](double sig) {
            return deriv_c(t - std::pow(sig, 1.0 / mu)) / mu;
        },
        0.0, std::pow(t - c, mu), 0.25 * tol);

    const double g = gamma_fn(mu);
    const double est = (left_err + right.error) / g;
    if (est > tol) {
        throw AccuracyError("quadrature error estimate above tolerance");
    }
    return (left_val + right.value) / g;
}

double caputo_quadrature(const Expression& u, double order, double t,
                         double tol) {
    if (u.empty()) throw DomainError("cannot differentiate an empty expression");
    return caputo_quadrature(
        [&u](double s) { return eval(u, 0.0, s); }, order, t, tol);
}

ErrorReport error_norms(const Eigen::VectorXd& numeric,
                        const std::function<double(double, double)>& exact,
                        double t, const SpaceGrid& grid) {
    if (numeric.size() != grid.M + 1) {
        throw ShapeError("numeric level must hold M+1 knot values");
    }
    ErrorReport rep;
    rep.M = grid.M;
    double sq = 0.0;
    for (int j = 0; j <= grid.M; ++j) {
        const double d = numeric(j) - exact(grid.knots(j), t);
        rep.l_inf = std::max(rep.l_inf, std::abs(d));
        sq += d * d;
    }
    rep.l2 = std::sqrt(grid.h * sq);
    return rep;
}

ErrorReport error_norms(const Eigen::VectorXd& numeric,
                        const Expression& exact, double t,
                        const SpaceGrid& grid) {
    if (exact.empty()) throw DomainError("exact solution expression is empty");
    return error_norms(
        numeric,
        [&exact](double x, double tt) { return eval(exact, x, tt); }, t,
        grid);
}

double observed_order(double e_coarse, double e_fine, double ratio) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        throw DomainError("error norms must be positive");
    }
    if (!(ratio > 1.0)) throw DomainError("refinement ratio must exceed 1");
    return std::log(e_coarse / e_fine) / std::log(ratio);
}

MmsCase mms_problem(double gamma, double gamma1, double gamma2,
                    double gamma3) {
    if (!(gamma > 1.0 && gamma < 2.0)) {
        throw DomainError("gamma must lie in (1, 2)");
    }
    const double pi = 3.14159265358979323846;
    const double ca = 2.0 / gamma_fn(3.0 - gamma);
    const double cb = 2.0 * gamma1 / gamma_fn(4.0 - gamma);
    const double cc = gamma2 + gamma3 * pi * pi;

    MmsCase mc;
    mc.problem.gamma = gamma;
    mc.problem.gamma1 = gamma1;
    mc.problem.gamma2 = gamma2;
    mc.problem.gamma3 = gamma3;
    mc.problem.phi1 = parse("0");
    mc.problem.phi2 = parse("0");
    mc.problem.psi1 = parse("0");
    mc.problem.psi2 = parse("0");
    mc.problem.f = parse("(" + fmt(ca) + "*t^" + fmt(2.0 - gamma) + " + " +
                         fmt(cb) + "*t^" + fmt(3.0 - gamma) + " + " +
                         fmt(cc) + "*t^2)*sin(pi*x)");
    mc.exact = parse("t^2*sin(pi*x)");
    return mc;
}

MmsCase mms_problem_ghost(double gamma, double gamma1, double gamma2,
                          double gamma3) {
    if (!(gamma > 1.0 && gamma < 2.0)) {
        throw DomainError("gamma must lie in (1, 2)");
    }
    const double pi = 3.14159265358979323846;
    // D^gamma t vanishes, but D^(gamma-1) t contributes t^(2-gamma).
    const double ca = (2.0 + gamma1) / gamma_fn(3.0 - gamma);
    const double cb = 2.0 * gamma1 / gamma_fn(4.0 - gamma);
    const double cc = gamma2 + gamma3 * pi * pi;

    MmsCase mc;
    mc.problem.gamma = gamma;
    mc.problem.gamma1 = gamma1;
    mc.problem.gamma2 = gamma2;
    mc.problem.gamma3 = gamma3;
    mc.problem.phi1 = parse("0");
    mc.problem.phi2 = parse("sin(pi*x)");
    mc.problem.psi1 = parse("0");
    mc.problem.psi2 = parse("0");
    mc.problem.f = parse("(" + fmt(ca) + "*t^" + fmt(2.0 - gamma) + " + " +
                         fmt(cb) + "*t^" + fmt(3.0 - gamma) + " + " +
                         fmt(cc) + "*(t^2 + t))*sin(pi*x)");
    mc.exact = parse("(t^2 + t)*sin(pi*x)");
    return mc;
}

}  // namespace fractel
