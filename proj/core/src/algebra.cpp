#include "nilflow/algebra.hpp"

#include <cmath>
#include <string>

#include "nilflow/errors.hpp"
#include "nilflow/sampling.hpp"

namespace nilflow {

namespace {

constexpr double kStructureTolerance = 1e-12;

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

Algebra2Step::Algebra2Step(int dim_v, int dim_z, std::vector<Matrix> j_mats,
                           std::optional<Matrix> metric)
    : dim_v_(dim_v), dim_z_(dim_z), j_mats_(std::move(j_mats)) {
  if (dim_v < 1 || dim_z < 1) throw InputError("algebra dimensions must be positive");
  if (static_cast<int>(j_mats_.size()) != dim_z) {
    throw InputError("expected " + std::to_string(dim_z) + " j-matrices, got " +
                     std::to_string(j_mats_.size()));
  }
  const int n = dim_v + dim_z;
  if (metric) {
    metric_ = *metric;
    if (metric_.rows() != n || metric_.cols() != n) {
      throw InputError("metric must be " + dims(n, n) + ", got " +
                       dims(metric_.rows(), metric_.cols()));
    }
    const double scale = std::max(1.0, linalg::max_abs(metric_));
    if (linalg::max_abs(metric_ - metric_.transpose()) > kStructureTolerance * scale) {
      throw InputError("metric is not symmetric");
    }
    if (linalg::max_abs(metric_.topRightCorner(dim_v, dim_z)) > kStructureTolerance * scale) {
      throw InputError("metric must make v orthogonal to z (block diagonal)");
    }
    Eigen::LLT<Matrix> llt(metric_);
    if (llt.info() != Eigen::Success) throw InputError("metric is not positive definite");
    standard_metric_ = metric_.isIdentity(0.0);
  } else {
    metric_ = Matrix::Identity(n, n);
  }
  metric_v_ = metric_.topLeftCorner(dim_v, dim_v);
  metric_z_inv_ = metric_.bottomRightCorner(dim_z, dim_z).inverse();

  for (std::size_t i = 0; i < j_mats_.size(); ++i) {
    const Matrix& j = j_mats_[i];
    if (j.rows() != dim_v || j.cols() != dim_v) {
      throw InputError("j_mats[" + std::to_string(i) + "] must be " + dims(dim_v, dim_v));
    }
    // <jU,V> = -<U,jV>  <=>  G j + j^T G = 0.
    const Matrix skew = metric_v_ * j + j.transpose() * metric_v_;
    const double scale = std::max(1.0, linalg::max_abs(metric_v_) * linalg::max_abs(j));
    if (linalg::max_abs(skew) > kStructureTolerance * scale) {
      throw InputError("j_mats[" + std::to_string(i) + "] is not skew-symmetric for the metric");
    }
  }
}

AlgebraVector Algebra2Step::compose(const Vector& v, const Vector& z) const {
  if (v.size() != dim_v_ || z.size() != dim_z_) throw InputError("v/z part has wrong length");
  AlgebraVector x(dim());
  x << v, z;
  return x;
}

AlgebraVector Algebra2Step::from_v(const Vector& v) const {
  return compose(v, Vector::Zero(dim_z_));
}

AlgebraVector Algebra2Step::from_z(const Vector& z) const {
  return compose(Vector::Zero(dim_v_), z);
}

AlgebraVector Algebra2Step::basis(int i) const {
  if (i < 0 || i >= dim()) throw InputError("basis index out of range");
  AlgebraVector e = zero();
  e(i) = 1.0;
  return e;
}

double Algebra2Step::inner(const AlgebraVector& x, const AlgebraVector& y) const {
  check(x);
  check(y);
  if (standard_metric_) return x.dot(y);
  return x.dot(metric_ * y);
}

double Algebra2Step::inner_v(const Vector& x, const Vector& y) const {
  if (x.size() != dim_v_ || y.size() != dim_v_) throw InputError("v-vector has wrong length");
  if (standard_metric_) return x.dot(y);
  return x.dot(metric_v_ * y);
}

void Algebra2Step::check(const AlgebraVector& x) const {
  if (x.size() != dim()) {
    throw InputError("algebra vector of length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(dim()));
  }
}

Matrix Algebra2Step::j_of(const Vector& z) const {
  if (z.size() != dim_z_) throw InputError("z-vector has wrong length");
  Matrix j = Matrix::Zero(dim_v_, dim_v_);
  for (int i = 0; i < dim_z_; ++i) j += z(i) * j_mats_[i];
  return j;
}

AlgebraVector Algebra2Step::bracket(const AlgebraVector& x, const AlgebraVector& y) const {
  check(x);
  check(y);
  const auto xv = x.head(dim_v_);
  const auto yv = y.head(dim_v_);
  Vector b(dim_z_);
  for (int i = 0; i < dim_z_; ++i) {
    // Antisymmetrized so that bracket(x,y) == -bracket(y,x) bit for bit.
    const double xy = inner_v(j_mats_[i] * xv, yv);
    const double yx = inner_v(j_mats_[i] * yv, xv);
    b(i) = 0.5 * (xy - yx);
  }
  AlgebraVector out = zero();
  out.tail(dim_z_) = standard_metric_ ? b : Vector(metric_z_inv_ * b);
  return out;
}

AlgebraVector Algebra2Step::ad_transpose(const AlgebraVector& v, const AlgebraVector& y) const {
  check(v);
  check(y);
  AlgebraVector out = zero();
  out.head(dim_v_) = j_of(y.tail(dim_z_)) * v.head(dim_v_);
  return out;
}

Matrix Algebra2Step::center() const {
  Matrix stacked(dim_v_ * dim_z_, dim_v_);
  for (int i = 0; i < dim_z_; ++i) stacked.middleRows(i * dim_v_, dim_v_) = j_mats_[i];
  const Matrix ker = linalg::kernel(stacked);
  Matrix cols = Matrix::Zero(dim(), dim_z_ + ker.cols());
  cols.bottomLeftCorner(dim_z_, dim_z_) = Matrix::Identity(dim_z_, dim_z_);
  cols.topRightCorner(dim_v_, ker.cols()) = ker;
  return linalg::orthonormalize(cols, metric_);
}

NonsingularResult Algebra2Step::is_nonsingular(int sample_count, std::uint64_t seed) const {
  if (sample_count < 1) throw InputError("sample_count must be at least 1");
  const auto singular = [&](const Vector& z) {
    return linalg::rank(j_of(z)) < dim_v_;
  };
  const Matrix gz = metric_.bottomRightCorner(dim_z_, dim_z_);
  const auto unit = [&](Vector z) { return Vector(z / std::sqrt(z.dot(gz * z))); };

  for (int i = 0; i < dim_z_; ++i) {
    const Vector z = unit(Vector::Unit(dim_z_, i));
    if (singular(z)) return {false, z};
  }
  if (dim_z_ == 1) return {true, std::nullopt};
  for (int s = 0; s < sample_count; ++s) {
    SampleRng rng(seed, static_cast<std::uint64_t>(s));
    const Vector z = unit(rng.normal_vector(dim_z_));
    if (singular(z)) return {false, z};
  }
  return {true, std::nullopt};
}

}  // namespace nilflow
