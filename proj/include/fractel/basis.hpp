#pragma once

#include <Eigen/Core>

namespace fractel {

/// Uniform spatial knot layout on [a, b] with M subintervals.
struct SpaceGrid {
    double a = 0.0;
    double b = 1.0;
    int M = 0;
    double h = 0.0;
    Eigen::VectorXd knots;  ///< x_j = a + j*h, j = 0..M
};

/// Builds and validates a grid. Requires M >= 3, b > a, and h in (0, 2*pi/5);
/// the upper bound keeps every trigonometric denominator of the collocation
/// constants away from zero.
SpaceGrid make_grid(double a, double b, int M);

/// The five closed-form collocation constants, functions of h only.
/// At a knot x_j: u_j = a1 c_{j-1} + a2 c_j + a1 c_{j+1},
/// u'_j = a3 (c_{j+1} - c_{j-1}), u''_j = a4 c_{j-1} + a5 c_j + a4 c_{j+1}.
struct StencilConstants {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;
    double a5 = 0.0;
};

/// Evaluates the closed forms. Requires h in (0, 2*pi/5).
StencilConstants collocation_constants(double h);

/// Spline coefficient vector c_{-1}..c_{M+1}; always of length M + 3 for its
/// grid. values(0) stores c_{-1}.
using SplineCoefficients = Eigen::VectorXd;

/// Piecewise value of the cubic trigonometric B-spline with support
/// [x_i, x_{i+4}] in support-start indexing (i = -3..M-1 covers [a, b];
/// uniformly extended knots are implied). Returns 0 outside the support.
double eval_basis(int i, double x, const SpaceGrid& grid);

/// Values, first and second derivatives at all knots x_0..x_M, reconstructed
/// from coefficients through the three-term stencils.
struct KnotValues {
    Eigen::VectorXd u;
    Eigen::VectorXd ux;
    Eigen::VectorXd uxx;
};

/// Applies the knot stencils to a coefficient vector of length M + 3
/// (M deduced from the input). Throws ShapeError for vectors shorter than 4.
KnotValues knot_values(const SplineCoefficients& c, const StencilConstants& s);

/// Convenience: the value stencil only, as an Eigen expression-friendly
/// vector of length c.size() - 2.
Eigen::VectorXd knot_u(const SplineCoefficients& c, const StencilConstants& s);

}  // namespace fractel
