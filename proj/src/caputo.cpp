#include "fractel/caputo.hpp"

#include <cmath>
#include <string>

#include "fractel/errors.hpp"
#include "fractel/gammafn.hpp"

namespace fractel {

FractionalWeights weights(double gamma, Eigen::Index n, double tau) {
    if (!(gamma > 1.0) || !(gamma < 2.0)) {
        throw DomainError("fractional order gamma = " + std::to_string(gamma) +
                          " outside (1, 2)");
    }
    if (!(tau > 0.0)) {
        throw DomainError("time step tau must be positive");
    }
    if (n < 0) {
        throw DomainError("weight count must be nonnegative");
    }
    FractionalWeights w;
    w.gamma = gamma;
    w.tau = tau;
    w.alpha0 = std::pow(tau, -gamma) / gamma_fn(3.0 - gamma);
    const double e = 2.0 - gamma;
    w.b.resize(n + 1);
    for (Eigen::Index k = 0; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        w.b(k) = std::pow(kd + 1.0, e) - std::pow(kd, e);
    }
    return w;
}

double discrete_caputo_2(const FractionalWeights& w, const Eigen::VectorXd& series) {
    const Eigen::Index m = series.size();
    if (m < 3) {
        throw ShapeError("series must hold at least u^{-1}, u^0, u^1");
    }
    const Eigen::Index n = m - 3;
    if (w.b.size() < n + 1) {
        throw ShapeError("weight table too short for history length");
    }
    // series(j + 1) stores u^j, j = -1..n+1.
    double acc = 0.0;
    for (Eigen::Index k = 0; k <= n; ++k) {
        acc += w.b(k) *
               (series(n + 2 - k) - 2.0 * series(n + 1 - k) + series(n - k));
    }
    return w.alpha0 * acc;
}

double discrete_caputo_1(const FractionalWeights& w, const Eigen::VectorXd& series) {
    const Eigen::Index m = series.size();
    if (m < 2) {
        throw ShapeError("series must hold at least u^0, u^1");
    }
    const Eigen::Index n = m - 2;
    if (w.b.size() < n + 1) {
        throw ShapeError("weight table too short for history length");
    }
    double acc = 0.0;
    for (Eigen::Index k = 0; k <= n; ++k) {
        acc += w.b(k) * (series(n + 1 - k) - series(n - k));
    }
    return w.alpha0 * w.tau * acc;
}

}  // namespace fractel
