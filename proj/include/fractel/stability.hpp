#pragma once

#include <Eigen/Core>

#include "fractel/basis.hpp"
#include "fractel/caputo.hpp"
#include "fractel/solver.hpp"

namespace fractel {

/// Amplitude history xi_0..xi_n of one Fourier mode pushed through the
/// scheme's error recursion, together with the parameters that produced it.
struct GrowthTrace {
    double nu = 0.0;
    double gamma = 1.5;
    double gamma1 = 0.0;
    double tau = 0.0;
    double beta = 0.0;
    Eigen::VectorXd xi;
};

/// Amplification denominator of the mode with wavenumber beta:
///   nu = 1 + gamma1*tau + gamma2/alpha0
///          - (gamma3/alpha0) * (2*a4*cos(beta*h) + a5) / (2*a1*cos(beta*h) + a2).
/// Throws DomainError if the trigonometric denominator vanishes (it cannot
/// for constants from a valid h, where a2 - 2*a1 > 0).
double compute_nu(const ProblemSpec& p, const StencilConstants& s,
                  const FractionalWeights& w, double beta, double h);

/// Sufficient stability condition nu >= 2 + gamma1*tau.
bool check_condition(double nu, double gamma1, double tau);

/// Runs the error recursion
///   xi_{n+1} = [(2 + gamma1*tau) xi_n - xi_{n-1}
///               - gamma1*tau * sum_k b_k (xi_{n+1-k} - xi_{n-k})
///               - sum_k b_k (xi_{n+1-k} - 2 xi_{n-k} + xi_{n-1-k})] / nu
/// for n_steps steps from xi_0, with xi_1 = (2 + gamma1*tau) xi_0 / nu and
/// the ghost value xi_{-1} = xi_1 in the k = n memory term. The weight table
/// must cover b_0..b_{n_steps - 1}.
GrowthTrace simulate_growth(double nu, double gamma1, double tau,
                            const FractionalWeights& w, int n_steps,
                            double xi0);

/// True when every amplitude obeys |xi_n| <= 2 |xi_0| + 1e-12.
bool verify_bound(const GrowthTrace& trace);

}  // namespace fractel
