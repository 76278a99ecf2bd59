#pragma once

#include <Eigen/Core>

namespace schauder {

/// Up to 3x3 matrices and 3-vectors without heap allocation.
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;

struct EigenRange {
    double min;
    double max;
};

/// Extreme eigenvalues of a symmetric matrix: closed form for d <= 2, cyclic
/// Jacobi sweeps for d = 3.
EigenRange symmetric_eigen_range(const SmallMat& m);

/// All eigenvalues of a symmetric matrix in ascending order (same methods).
SmallVec symmetric_eigenvalues(const SmallMat& m);

/// Inverse by closed form for d <= 2, Gaussian elimination with partial
/// pivoting for d = 3. Throws NumericalError when the matrix is numerically
/// singular relative to its scale.
SmallMat small_inverse(const SmallMat& m);

double small_determinant(const SmallMat& m);

}  // namespace schauder
