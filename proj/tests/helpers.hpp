#pragma once

#include <cmath>

#include "nilflow/heisenberg.hpp"
#include "nilflow/sampling.hpp"

namespace nilflow::test {

inline double max_diff(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline double max_diff(const TangentVectorPair& a, const TangentVectorPair& b) {
  return max_diff(a.flat(), b.flat());
}

inline TangentState state(const Vector& p, const Vector& y) { return {p, y}; }

/// Vector from an initializer list.
inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

/// Symmetric map commuting with J: (S + J S J^T)/2.
inline Matrix j_commuting_symmetric(SampleRng& rng, int n) {
  const Matrix j = linalg::complex_structure(n);
  const Matrix s = random_symmetric(rng, 2 * n);
  return 0.5 * (s + j * s * j.transpose());
}

/// Symmetric positive-definite P~ with J-invariant eigenspaces.
inline Matrix random_p_tilde(SampleRng& rng, int n) {
  const Matrix c = j_commuting_symmetric(rng, n);
  // Shift to positive definite; the shift commutes with J.
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  return c + (1.0 - es.eigenvalues().minCoeff() + rng.uniform(0.0, 1.0)) *
                 Matrix::Identity(2 * n, 2 * n);
}

/// Free 2-step nilpotent algebra on 3 generators: [X_a, X_b] = e_{abc} Z_c.
inline Algebra2Step free_three_step_two() {
  std::vector<Matrix> js;
  for (int c = 0; c < 3; ++c) {
    Matrix m = Matrix::Zero(3, 3);
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    // <j(Z_c) X_a, X_b> = 1.
    m(b, a) = 1.0;
    m(a, b) = -1.0;
    js.push_back(m);
  }
  return Algebra2Step(3, 3, js);
}

}  // namespace nilflow::test
