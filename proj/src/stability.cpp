#include "fractel/stability.hpp"

#include <cmath>

#include "fractel/errors.hpp"

namespace fractel {

double compute_nu(const ProblemSpec& p, const StencilConstants& s,
                  const FractionalWeights& w, double beta, double h) {
    const double c = std::cos(beta * h);
    const double den = 2.0 * s.a1 * c + s.a2;
    if (std::abs(den) < 1e-12) {
        throw DomainError("trigonometric denominator vanishes in nu");
    }
    const double ratio = (2.0 * s.a4 * c + s.a5) / den;
    return 1.0 + p.gamma1 * w.tau + p.gamma2 / w.alpha0 -
           (p.gamma3 / w.alpha0) * ratio;
}

bool check_condition(double nu, double gamma1, double tau) {
    return nu >= 2.0 + gamma1 * tau;
}

GrowthTrace simulate_growth(double nu, double gamma1, double tau,
                            const FractionalWeights& w, int n_steps,
                            double xi0) {
    if (n_steps < 1) throw DomainError("n_steps must be at least 1");
    if (nu == 0.0) throw DomainError("nu must be nonzero");
    if (w.b.size() < n_steps) {
        throw ShapeError("weight table too short for requested steps");
    }

    GrowthTrace trace;
    trace.nu = nu;
    trace.gamma = w.gamma;
    trace.gamma1 = gamma1;
    trace.tau = tau;
    trace.xi = Eigen::VectorXd::Zero(n_steps + 1);
    trace.xi(0) = xi0;
    const double g1t = gamma1 * tau;
    trace.xi(1) = (2.0 + g1t) / nu * xi0;

    for (int n = 1; n < n_steps; ++n) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double bk = w.b(k);
            const double lo = (k == n) ? trace.xi(1) : trace.xi(n - 1 - k);
            s1 += bk * (trace.xi(n + 1 - k) - trace.xi(n - k));
            s2 += bk * (trace.xi(n + 1 - k) - 2.0 * trace.xi(n - k) + lo);
        }
        trace.xi(n + 1) = ((2.0 + g1t) * trace.xi(n) - trace.xi(n - 1) -
                           g1t * s1 - s2) /
                          nu;
    }
    return trace;
}

bool verify_bound(const GrowthTrace& trace) {
    const double bound = 2.0 * std::abs(trace.xi(0)) + 1e-12;
    return (trace.xi.array().abs() <= bound).all();
}

}  // namespace fractel
