#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nilflow/linalg.hpp"

namespace nilflow {

/// Element of n = v (+) z, stored flat as (v_1..v_{dim_v}, z_1..z_{dim_z}).
using AlgebraVector = Eigen::VectorXd;

struct NonsingularResult {
  bool nonsingular = true;
  /// A central direction with singular j(Z), when one was found.
  std::optional<Vector> witness;
};

/// Metric 2-step nilpotent Lie algebra described by its j-map.
///
/// The bracket is encoded by <[U,V], Z> = <j(Z)U, V> for U,V in v and Z in
/// z, where j(Z_i) = j_mats[i] is skew with respect to the v-block of the
/// metric. The metric must be block diagonal so that v is the orthogonal
/// complement of the z coordinates. Immutable once constructed.
class Algebra2Step {
 public:
  /// Throws InputError when sizes disagree, the metric is not symmetric
  /// positive definite and block diagonal, or some j_mats[i] is not skew.
  Algebra2Step(int dim_v, int dim_z, std::vector<Matrix> j_mats,
               std::optional<Matrix> metric = std::nullopt);

  int dim_v() const { return dim_v_; }
  int dim_z() const { return dim_z_; }
  int dim() const { return dim_v_ + dim_z_; }
  const std::vector<Matrix>& j_mats() const { return j_mats_; }
  const Matrix& metric() const { return metric_; }
  bool has_standard_metric() const { return standard_metric_; }

  Vector v_part(const AlgebraVector& x) const { return x.head(dim_v_); }
  Vector z_part(const AlgebraVector& x) const { return x.tail(dim_z_); }
  AlgebraVector compose(const Vector& v, const Vector& z) const;
  AlgebraVector from_v(const Vector& v) const;
  AlgebraVector from_z(const Vector& z) const;
  /// i-th coordinate basis vector of n (X_1.., then Z_1..).
  AlgebraVector basis(int i) const;
  AlgebraVector zero() const { return AlgebraVector::Zero(dim()); }

  double inner(const AlgebraVector& x, const AlgebraVector& y) const;
  double inner_v(const Vector& x, const Vector& y) const;

  /// Throws InputError unless x has length dim().
  void check(const AlgebraVector& x) const;

  /// j(Z) = sum_i Z_i j_mats[i].
  Matrix j_of(const Vector& z) const;

  /// Pure-z vector with <[X,Y], Z_i> = <j(Z_i) X_v, Y_v>.
  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;

  /// Metric transpose of ad(V) applied to Y; equals j(Y_z) V_v (pure v).
  AlgebraVector ad_transpose(const AlgebraVector& v, const AlgebraVector& y) const;

  /// Metric-orthonormal basis (columns) of the center: the z coordinates
  /// together with the common kernel of all j_mats.
  Matrix center() const;

  /// Exact rank test when dim_z = 1. Otherwise probes each coordinate
  /// direction Z_i and then `sample_count` seeded unit vectors of z.
  NonsingularResult is_nonsingular(int sample_count, std::uint64_t seed) const;

 private:
  int dim_v_;
  int dim_z_;
  std::vector<Matrix> j_mats_;
  Matrix metric_;
  Matrix metric_v_;
  Matrix metric_z_inv_;
  bool standard_metric_ = true;
};

}  // namespace nilflow
