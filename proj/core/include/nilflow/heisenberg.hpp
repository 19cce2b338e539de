#pragma once

#include <optional>
#include <vector>

#include "nilflow/integrals.hpp"

namespace nilflow {

/// h_n in the interleaved basis X_1, X_2, ..., X_{2n}, Z_1 with
/// [X_{2i-1}, X_{2i}] = Z_1 and the canonical (identity) metric.
Algebra2Step heisenberg_algebra(int n);
NilpotentGroup heisenberg_group(int n);

/// Projection A_i onto span{X_{2i-1}, X_{2i}} (0-based i), as a 2n x 2n map.
Matrix plane_projection(int n, int i);

/// T_i = J A_i.
Matrix cartan_generator(int n, int i);

/// Frobenius-orthonormal basis of k = {B skew : [J, B] = 0}, n^2 elements.
std::vector<Matrix> isotropy_basis(int n);

struct CanonicalFamilies {
  /// {E} u {g_{A_i}} u {F_{T_i}}.
  Family g;
  /// {f_{Z_1}} u {g_{A_i}} u {F_{2k-1}}.
  Family f;
  /// {f_{Z_1}} u {g_{A_i}} u {F_{2k}}.
  Family f_prime;
};

/// The three commuting families of size 2n+1 on the canonical H_n.
CanonicalFamilies canonical_families(int n);

/// Family G built on an arbitrary commuting torus {A_i} of J-commuting
/// symmetric maps (T_i = J A_i).
Family family_g(const NilpotentGroup& g, const std::vector<Matrix>& torus);

/// Left-invariant metric <X,Y>_P = <PX,Y> on h_n with P = diag(P~, lambda).
struct PMetricSpec {
  Matrix p_tilde;
  double lambda = 1.0;
  /// j_P(Z_1) = lambda P~^{-1} J.
  Matrix j_p;
  /// Standard-orthonormal eigenvectors of P~ with U_{2i} = J U_{2i-1}.
  Matrix u;
  Vector eigenvalues;
  /// A~_i: identity on span{U_{2i-1}, U_{2i}}, zero on the other U_k.
  std::vector<Matrix> a_tilde;
  NilpotentGroup group;
  /// {f_{Z_1}} u {g_{A~_i}} u {F~_{2k-1}} and the F~_{2k} variant.
  Family f;
  Family f_prime;

  const Algebra2Step& algebra() const { return group.algebra(); }
  /// F~_k for U_{k+1} (0-based k).
  FirstIntegral translation(int k) const;
};

/// Builds the P-metric model. Throws ConfigError when P~ is not symmetric
/// positive definite, lambda <= 0, or an eigenspace of P~ is not
/// J-invariant (no basis with U_{2i} = J U_{2i-1} exists).
PMetricSpec build_p_metric(const Matrix& p_tilde, double lambda);

}  // namespace nilflow
