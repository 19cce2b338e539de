#include "nilflow/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace nilflow::linalg {

namespace {

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& m, unsigned options) {
  return Eigen::JacobiSVD<Matrix>(m, options);
}

int rank_from_singular_values(const Vector& s, double rel_tol) {
  if (s.size() == 0) return 0;
  const double smax = s.maxCoeff();
  if (smax <= 0.0) return 0;
  return static_cast<int>((s.array() > rel_tol * smax).count());
}

}  // namespace

int rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  return rank_from_singular_values(svd_of(m, 0).singularValues(), rel_tol);
}

Matrix kernel(const Matrix& m, double rel_tol) {
  const auto cols = m.cols();
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  // Pad to at least as many rows as columns so the full V is available.
  Matrix padded = m;
  if (m.rows() < cols) {
    padded = Matrix::Zero(cols, cols);
    padded.topRows(m.rows()) = m;
  }
  const auto svd = svd_of(padded, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(cols - r);
}

Matrix expm(const Matrix& a) {
  const auto n = a.rows();
  if (n == 0) return a;
  constexpr double c[7] = {1.0,          1.0 / 2.0,     5.0 / 44.0,     1.0 / 66.0,
                           1.0 / 792.0,  1.0 / 15840.0, 1.0 / 665280.0};
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Matrix x = a / std::ldexp(1.0, squarings);

  const Matrix id = Matrix::Identity(n, n);
  const Matrix x2 = x * x;
  const Matrix x4 = x2 * x2;
  const Matrix x6 = x4 * x2;
  const Matrix even = c[0] * id + c[2] * x2 + c[4] * x4 + c[6] * x6;
  const Matrix odd = x * (c[1] * id + c[3] * x2 + c[5] * x4);
  Matrix r = (even - odd).partialPivLu().solve(even + odd);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

Matrix orthonormalize(const Matrix& columns, const Matrix& g, double tol) {
  std::vector<Vector> kept;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vector w = columns.col(j);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) w -= (q.dot(g * w)) * q;
    }
    const double nrm = std::sqrt(std::max(0.0, w.dot(g * w)));
    if (nrm > tol) kept.push_back(w / nrm);
  }
  Matrix out(columns.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = kept[j];
  return out;
}

double commutator_norm(const Matrix& a, const Matrix& b) { return (a * b - b * a).norm(); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix complex_structure(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(2 * i + 1, 2 * i) = 1.0;
    j(2 * i, 2 * i + 1) = -1.0;
  }
  return j;
}

}  // namespace nilflow::linalg
