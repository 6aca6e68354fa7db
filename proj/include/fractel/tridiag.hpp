#pragma once

#include <Eigen/Core>

namespace fractel {

/// Tridiagonal system with two extra corner entries: row 0 carries one at
/// column 2 and row n-1 one at column n-3. This is exactly the shape produced
/// by collocation plus the two boundary closure rows.
///
/// Row i holds sub(i) at column i-1, diag(i) at column i, sup(i) at column
/// i+1; sub(0) and sup(n-1) are ignored.
struct BandedSystem {
    Eigen::VectorXd sub;
    Eigen::VectorXd diag;
    Eigen::VectorXd sup;
    double corner_top = 0.0;
    double corner_bottom = 0.0;
    Eigen::VectorXd rhs;

    Eigen::Index size() const { return diag.size(); }

    /// Diagnostic only: true when every row is weakly diagonally dominant.
    bool diagonally_dominant() const;
};

/// Solves the system by a single banded forward sweep and back substitution.
///
/// The top corner is absorbed into row 1's superdiagonal when row 1's
/// subdiagonal is eliminated; the bottom corner is eliminated against row n-3
/// (its fill lands on row n-1's subdiagonal and is then removed against row
/// n-2); row 0's corner is resolved during back substitution once x(2) is
/// known. O(n), no pivoting. Throws SingularityError with the pivot row on a
/// zero pivot and ShapeError for inconsistent band sizes or n < 3.
Eigen::VectorXd solve_banded(const BandedSystem& sys);

}  // namespace fractel
