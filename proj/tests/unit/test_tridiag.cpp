#include "doctest.h"

#include <random>

#include <Eigen/Dense>

#include "fractel/errors.hpp"
#include "fractel/tridiag.hpp"

using namespace fractel;

namespace {

Eigen::MatrixXd to_dense(const BandedSystem& sys) {
    const Eigen::Index n = sys.size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(i, i) = sys.diag(i);
        if (i > 0) A(i, i - 1) = sys.sub(i);
        if (i + 1 < n) A(i, i + 1) = sys.sup(i);
    }
    A(0, 2) = sys.corner_top;
    A(n - 1, n - 3) = sys.corner_bottom;
    return A;
}

}  // namespace

TEST_CASE("plain tridiagonal Poisson-like system") {
    const int n = 5;
    BandedSystem sys;
    sys.sub = Eigen::VectorXd::Constant(n, -1.0);
    sys.diag = Eigen::VectorXd::Constant(n, 2.0);
    sys.sup = Eigen::VectorXd::Constant(n, -1.0);
    sys.rhs = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd x = solve_banded(sys);
    const double expected[5] = {2.5, 4.0, 4.5, 4.0, 2.5};
    for (int i = 0; i < n; ++i) {
        CHECK(x(i) == doctest::Approx(expected[i]).epsilon(1e-13));
    }
    CHECK(sys.diagonally_dominant());
}

TEST_CASE("corner systems match a dense LU oracle") {
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> pick(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 5 + (trial % 3) * 4;  // 5, 9, 13
        BandedSystem sys;
        sys.sub = Eigen::VectorXd::NullaryExpr(n, [&] { return pick(rng); });
        sys.diag = Eigen::VectorXd::NullaryExpr(n, [&] { return pick(rng); });
        sys.sup = Eigen::VectorXd::NullaryExpr(n, [&] { return pick(rng); });
        sys.rhs = Eigen::VectorXd::NullaryExpr(n, [&] { return pick(rng); });
        sys.diag = sys.diag.unaryExpr(
            [](double v) { return v + (v >= 0.0 ? 4.0 : -4.0); });
        sys.corner_top = pick(rng);
        sys.corner_bottom = pick(rng);

        const Eigen::VectorXd x = solve_banded(sys);
        const Eigen::MatrixXd A = to_dense(sys);
        const Eigen::VectorXd ref = Eigen::FullPivLU<Eigen::MatrixXd>(A).solve(sys.rhs);
        CHECK((x - ref).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((A * x - sys.rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("symmetric-triple corner rows are handled") {
    // Both boundary rows share the (v, w, v) shape with the matching corner,
    // the layout every closure row of the collocation systems has.
    const int n = 7;
    BandedSystem sys;
    sys.sub = Eigen::VectorXd::Constant(n, 0.1873);
    sys.diag = Eigen::VectorXd::Constant(n, 0.7259);
    sys.sup = Eigen::VectorXd::Constant(n, 0.1873);
    sys.diag(0) = 4.1686;
    sys.sup(0) = -8.3502;
    sys.corner_top = 4.1686;
    sys.sub(n - 1) = -8.3502;
    sys.diag(n - 1) = 4.1686;
    sys.corner_bottom = 4.1686;
    sys.rhs = Eigen::VectorXd::LinSpaced(n, 1.0, 7.0);

    const Eigen::VectorXd x = solve_banded(sys);
    const Eigen::MatrixXd A = to_dense(sys);
    CHECK((A * x - sys.rhs).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("zero pivot reports its row") {
    const int n = 5;
    BandedSystem sys;
    sys.sub = Eigen::VectorXd::Zero(n);
    sys.diag = Eigen::VectorXd::Zero(n);
    sys.sup = Eigen::VectorXd::Zero(n);
    sys.rhs = Eigen::VectorXd::Ones(n);
    try {
        solve_banded(sys);
        FAIL("expected SingularityError");
    } catch (const SingularityError& e) {
        CHECK(e.index() == 0);
    }
}

TEST_CASE("shape validation") {
    BandedSystem sys;
    sys.sub = Eigen::VectorXd::Zero(2);
    sys.diag = Eigen::VectorXd::Zero(2);
    sys.sup = Eigen::VectorXd::Zero(2);
    sys.rhs = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(solve_banded(sys), ShapeError);

    BandedSystem bad;
    bad.sub = Eigen::VectorXd::Zero(5);
    bad.diag = Eigen::VectorXd::Zero(6);
    bad.sup = Eigen::VectorXd::Zero(5);
    bad.rhs = Eigen::VectorXd::Zero(5);
    CHECK_THROWS_AS(solve_banded(bad), ShapeError);
}
