#pragma once

#include <Eigen/Dense>

namespace nilflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace linalg {

/// Relative singular-value cutoff used for every rank and kernel computation.
inline constexpr double kRankTolerance = 1e-10;

/// Numerical rank: number of singular values above `rel_tol * s_max`.
int rank(const Matrix& m, double rel_tol = kRankTolerance);

/// Orthonormal (Euclidean) basis of ker(m), one vector per column.
Matrix kernel(const Matrix& m, double rel_tol = kRankTolerance);

/// Matrix exponential by scaling and squaring with a diagonal (6,6) Pade
/// approximant. Accurate to a few ulps for the small well-conditioned
/// generators this library integrates.
Matrix expm(const Matrix& a);

/// Gram-Schmidt with respect to the inner product <x,y> = x^T g y. Columns
/// whose residual norm falls below `tol` are dropped.
Matrix orthonormalize(const Matrix& columns, const Matrix& g, double tol = 1e-10);

/// Frobenius norm of the commutator ab - ba.
double commutator_norm(const Matrix& a, const Matrix& b);

/// Largest absolute entry, 0 for empty matrices.
double max_abs(const Matrix& m);

/// Symplectic 2n x 2n complex structure in interleaved ordering:
/// J e_{2i-1} = e_{2i}, J e_{2i} = -e_{2i-1}.
Matrix complex_structure(int n);

}  // namespace linalg
}  // namespace nilflow
