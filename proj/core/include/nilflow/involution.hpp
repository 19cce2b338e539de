#pragma once

#include <cstdint>
#include <vector>

#include "nilflow/integrals.hpp"

namespace nilflow {

inline constexpr double kCommutatorTolerance = 1e-10;

/// g_A is a first integral iff [j(Z_i), A] = 0 for every basis vector Z_i.
/// `a` may act on v or on n (then its z block must vanish).
/// Throws InputError when `a` is not symmetric in the metric.
bool quadratic_is_integral(const Algebra2Step& alg, const Matrix& a);

/// For first integrals g_A, g_B: {g_A, g_B} = 0 iff j(Z_i)(AB - BA) = 0 for
/// every i. Throws InputError when either map fails quadratic_is_integral.
bool quadratic_pair_commutes(const Algebra2Step& alg, const Matrix& a, const Matrix& b);

/// psi(A) = J A, mapping J-commuting symmetric maps into the isotropy algebra.
/// Throws InputError unless A is symmetric and commutes with J.
Matrix psi(const Matrix& a, const Matrix& j);

/// Inverse of psi: B -> -J B (so psi(psi_inverse(B)) = B when J^2 = -1).
/// Throws InputError unless B is skew and commutes with J.
Matrix psi_inverse(const Matrix& b, const Matrix& j);

/// Element T + U of k (+) h_n; generates the Killing field X_T* + X_U*.
struct IsometryAlgebraElement {
  /// Skew map of v commuting with J (isotropy part).
  Matrix t;
  /// Left-translation generator (v part: coefficients s_k, z part: z).
  AlgebraVector translation;
};

/// f_{X*} = F_T + sum_k s_k F_k + z f_{Z_1} as a combination integral.
/// Requires the canonical H_n structure (dim z = 1, J^2 = -1).
FirstIntegral killing_to_integral(const NilpotentGroup& g, const IsometryAlgebraElement& x);

/// Coordinates of the Killing field at p, built from the isometry actions
/// directly: d/ds exp(sT)-rotation of p_v plus the right-invariant field
/// d/ds exp(sU) p.
Vector killing_field(const NilpotentGroup& g, const IsometryAlgebraElement& x,
                     const GroupElement& p);

/// Annihilator n_lambda = {X : lambda([X, .]) = 0} of lambda = <V + Z, .>,
/// equal to ker j(Z) (+) z. Metric-orthonormal basis in the columns.
Matrix butler_annihilator(const Algebra2Step& alg, const AlgebraVector& lambda);

struct ButlerResult {
  /// True when generic pairs are regular with [n_lambda, n_mu] != 0.
  bool non_integrable = false;
  int min_annihilator_dim = 0;
  /// Fraction of sampled pairs with both regular and positive bracket dim.
  double positive_fraction = 0.0;
  int samples = 0;
  /// Sample indices of pairs with nontrivial bracket (first few).
  std::vector<int> witnesses;
};

/// Dimension of span{[a, b] : a in n_lambda, b in n_mu}.
int annihilator_bracket_dim(const Algebra2Step& alg, const AlgebraVector& lambda,
                            const AlgebraVector& mu);

/// Sampled version of the non-integrability definition: minimal dimension
/// is the sample minimum; "generic" means at least 99% of pairs.
ButlerResult butler_predicate(const Algebra2Step& alg, int samples, std::uint64_t seed);

}  // namespace nilflow
