#pragma once

#include <Eigen/Core>

namespace fractel {

/// L1-type fractional difference weights for a Caputo order gamma in (1, 2).
///
/// b_k = (k+1)^(2-gamma) - k^(2-gamma) and alpha0 = tau^(-gamma) / Gamma(3-gamma).
/// One table serves both discrete operators: order gamma with second
/// differences, order gamma-1 with first differences and prefactor alpha0*tau.
struct FractionalWeights {
    double gamma = 0.0;
    double tau = 0.0;
    double alpha0 = 0.0;
    Eigen::VectorXd b;  ///< b_0..b_n
};

/// Builds the weight table b_0..b_n. Requires gamma in (1, 2) and tau > 0.
FractionalWeights weights(double gamma, Eigen::Index n, double tau);

/// Discrete Caputo derivative of order gamma at t_{n+1}.
///
/// series holds u^{-1}, u^0, ..., u^{n+1} (ghost level first; size n + 3).
/// Returns alpha0 * sum_{k=0..n} b_k (u^{n+1-k} - 2 u^{n-k} + u^{n-1-k}).
double discrete_caputo_2(const FractionalWeights& w, const Eigen::VectorXd& series);

/// Discrete Caputo derivative of order gamma-1 at t_{n+1}.
///
/// series holds u^0, ..., u^{n+1} (no ghost level; size n + 2).
/// Returns alpha0 * tau * sum_{k=0..n} b_k (u^{n+1-k} - u^{n-k}).
double discrete_caputo_1(const FractionalWeights& w, const Eigen::VectorXd& series);

}  // namespace fractel
