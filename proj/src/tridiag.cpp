#include "fractel/tridiag.hpp"

#include <cmath>
#include <string>

#include "fractel/errors.hpp"

namespace fractel {

namespace {

constexpr double kPivotFloor = 1e-300;

void check_pivot(double d, Eigen::Index row) {
    if (std::abs(d) < kPivotFloor) {
        throw SingularityError(static_cast<std::ptrdiff_t>(row));
    }
}

// n = 3 is dense 3x3 in disguise: the corners land on columns 2 and 0.
Eigen::VectorXd solve3(const BandedSystem& sys) {
    Eigen::Matrix3d A;
    A << sys.diag(0), sys.sup(0), sys.corner_top,
         sys.sub(1), sys.diag(1), sys.sup(1),
         sys.corner_bottom, sys.sub(2), sys.diag(2);
    Eigen::Vector3d r = sys.rhs;
    for (int i = 0; i < 3; ++i) {
        check_pivot(A(i, i), i);
        for (int j = i + 1; j < 3; ++j) {
            const double m = A(j, i) / A(i, i);
            A.row(j) -= m * A.row(i);
            r(j) -= m * r(i);
        }
    }
    Eigen::Vector3d x;
    x(2) = r(2) / A(2, 2);
    x(1) = (r(1) - A(1, 2) * x(2)) / A(1, 1);
    x(0) = (r(0) - A(0, 1) * x(1) - A(0, 2) * x(2)) / A(0, 0);
    return x;
}

}  // namespace

bool BandedSystem::diagonally_dominant() const {
    const Eigen::Index n = diag.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        double off = 0.0;
        if (i > 0) off += std::abs(sub(i));
        if (i < n - 1) off += std::abs(sup(i));
        if (i == 0) off += std::abs(corner_top);
        if (i == n - 1) off += std::abs(corner_bottom);
        if (std::abs(diag(i)) < off) {
            return false;
        }
    }
    return true;
}

Eigen::VectorXd solve_banded(const BandedSystem& sys) {
    const Eigen::Index n = sys.diag.size();
    if (n < 3) {
        throw ShapeError("banded system needs n >= 3, got " + std::to_string(n));
    }
    if (sys.sub.size() != n || sys.sup.size() != n || sys.rhs.size() != n) {
        throw ShapeError("band and rhs sizes must all equal n");
    }
    if (n == 3) {
        return solve3(sys);
    }

    Eigen::VectorXd d(n), s(n), r = sys.rhs;
    d(0) = sys.diag(0);
    s(0) = sys.sup(0);
    check_pivot(d(0), 0);

    // Row 1: eliminating its subdiagonal folds the top corner into s(1).
    double m = sys.sub(1) / d(0);
    d(1) = sys.diag(1) - m * s(0);
    s(1) = sys.sup(1) - m * sys.corner_top;
    r(1) -= m * r(0);

    for (Eigen::Index i = 2; i < n - 1; ++i) {
        check_pivot(d(i - 1), i - 1);
        m = sys.sub(i) / d(i - 1);
        d(i) = sys.diag(i) - m * s(i - 1);
        s(i) = sys.sup(i);
        r(i) -= m * r(i - 1);
    }

    // Last row: remove the bottom corner against row n-3, then the remaining
    // subdiagonal fill against row n-2.
    check_pivot(d(n - 3), n - 3);
    const double m1 = sys.corner_bottom / d(n - 3);
    double last_sub = sys.sub(n - 1) - m1 * s(n - 3);
    r(n - 1) -= m1 * r(n - 3);
    check_pivot(d(n - 2), n - 2);
    const double m2 = last_sub / d(n - 2);
    d(n - 1) = sys.diag(n - 1) - m2 * s(n - 2);
    r(n - 1) -= m2 * r(n - 2);

    Eigen::VectorXd x(n);
    check_pivot(d(n - 1), n - 1);
    x(n - 1) = r(n - 1) / d(n - 1);
    x(n - 2) = (r(n - 2) - s(n - 2) * x(n - 1)) / d(n - 2);
    for (Eigen::Index i = n - 3; i >= 1; --i) {
        x(i) = (r(i) - s(i) * x(i + 1)) / d(i);
    }
    x(0) = (r(0) - s(0) * x(1) - sys.corner_top * x(2)) / d(0);
    return x;
}

}  // namespace fractel
