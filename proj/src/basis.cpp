#include "fractel/basis.hpp"

#include <cmath>
#include <string>

#include "fractel/errors.hpp"

namespace fractel {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHMax = 2.0 * kPi / 5.0;

void require_h(double h) {
    if (!(h > 0.0) || !(h < kHMax)) {
        throw DomainError("spatial step h = " + std::to_string(h) +
                          " outside (0, 2*pi/5)");
    }
}

}  // namespace

SpaceGrid make_grid(double a, double b, int M) {
    if (M < 3) {
        throw ConfigError("grid.M", "need at least 3 subintervals, got " +
                                        std::to_string(M));
    }
    if (!(b > a)) {
        throw ConfigError("grid.b", "right endpoint must exceed left endpoint");
    }
    SpaceGrid g;
    g.a = a;
    g.b = b;
    g.M = M;
    g.h = (b - a) / static_cast<double>(M);
    require_h(g.h);
    g.knots = Eigen::VectorXd::LinSpaced(M + 1, a, b);
    return g;
}

StencilConstants collocation_constants(double h) {
    require_h(h);
    StencilConstants s;
    const double sh = std::sin(h);
    const double sh2 = std::sin(0.5 * h);
    const double s3h2 = std::sin(1.5 * h);
    const double ch = std::cos(h);
    s.a1 = sh2 * sh2 / (sh * s3h2);
    s.a2 = 2.0 / (1.0 + 2.0 * ch);
    s.a3 = 0.75 / s3h2;
    s.a4 = (3.0 + 9.0 * ch) / (4.0 * std::cos(0.5 * h) - 4.0 * std::cos(2.5 * h));
    const double cot = std::cos(0.5 * h) / sh2;
    s.a5 = -3.0 * cot * cot / (2.0 + 4.0 * ch);
    return s;
}

double eval_basis(int i, double x, const SpaceGrid& grid) {
    require_h(grid.h);
    const double h = grid.h;
    const double x0 = grid.a + i * h;
    if (x < x0 || x > x0 + 4.0 * h) {
        return 0.0;
    }
    // p(x_k) = sin((x - x_k)/2), q(x_k) = sin((x_k - x)/2) with x_k = x0 + k*h.
    const auto p = [&](int k) { return std::sin(0.5 * (x - (x0 + k * h))); };
    const auto q = [&](int k) { return std::sin(0.5 * ((x0 + k * h) - x)); };
    const double w = std::sin(0.5 * h) * std::sin(h) * std::sin(1.5 * h);
    double v;
    if (x <= x0 + h) {
        const double p0 = p(0);
        v = p0 * p0 * p0;
    } else if (x <= x0 + 2.0 * h) {
        v = p(0) * (p(0) * q(2) + q(3) * p(1)) + q(4) * p(1) * p(1);
    } else if (x <= x0 + 3.0 * h) {
        v = q(4) * (p(1) * q(3) + q(4) * p(2)) + p(0) * q(3) * q(3);
    } else {
        const double q4 = q(4);
        v = q4 * q4 * q4;
    }
    return v / w;
}

KnotValues knot_values(const SplineCoefficients& c, const StencilConstants& s) {
    const Eigen::Index n = c.size();
    if (n < 4) {
        throw ShapeError("coefficient vector too short: " + std::to_string(n));
    }
    const Eigen::Index m = n - 2;  // number of knots
    KnotValues kv;
    kv.u = s.a1 * c.segment(0, m) + s.a2 * c.segment(1, m) + s.a1 * c.segment(2, m);
    kv.ux = s.a3 * (c.segment(2, m) - c.segment(0, m));
    kv.uxx = s.a4 * c.segment(0, m) + s.a5 * c.segment(1, m) + s.a4 * c.segment(2, m);
    return kv;
}

Eigen::VectorXd knot_u(const SplineCoefficients& c, const StencilConstants& s) {
    const Eigen::Index n = c.size();
    if (n < 4) {
        throw ShapeError("coefficient vector too short: " + std::to_string(n));
    }
    const Eigen::Index m = n - 2;
    return s.a1 * c.segment(0, m) + s.a2 * c.segment(1, m) + s.a1 * c.segment(2, m);
}

}  // namespace fractel
