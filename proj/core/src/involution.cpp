#include "nilflow/involution.hpp"

#include <algorithm>

#include "nilflow/errors.hpp"
#include "nilflow/sampling.hpp"

namespace nilflow {

namespace {

constexpr double kStructureTol = 1e-12;

double scaled(const Matrix& m) { return kStructureTol * std::max(1.0, linalg::max_abs(m)); }

/// v-block of a quadratic map after validating symmetry and the z block.
Matrix v_block(const Algebra2Step& alg, const Matrix& a) {
  const int dv = alg.dim_v();
  Matrix av;
  if (a.rows() == dv && a.cols() == dv) {
    av = a;
  } else if (a.rows() == alg.dim() && a.cols() == alg.dim()) {
    if (linalg::max_abs(a.rightCols(alg.dim_z())) > scaled(a) ||
        linalg::max_abs(a.bottomRows(alg.dim_z())) > scaled(a)) {
      throw InputError("quadratic map must annihilate z and preserve v");
    }
    av = a.topLeftCorner(dv, dv);
  } else {
    throw InputError("quadratic map has wrong size");
  }
  const Matrix gv = alg.metric().topLeftCorner(dv, dv);
  const Matrix ga = gv * av;
  if (linalg::max_abs(ga - ga.transpose()) > scaled(ga)) {
    throw InputError("quadratic map is not symmetric for the metric");
  }
  return av;
}

void require_commuting_with(const Matrix& m, const Matrix& j, const char* what) {
  if (m.rows() != j.rows() || m.cols() != j.cols()) {
    throw InputError(std::string(what) + " has wrong size");
  }
  if (linalg::max_abs(j * m - m * j) > kCommutatorTolerance) {
    throw InputError(std::string(what) + " does not commute with J");
  }
}

}  // namespace

bool quadratic_is_integral(const Algebra2Step& alg, const Matrix& a) {
  const Matrix av = v_block(alg, a);
  return std::all_of(alg.j_mats().begin(), alg.j_mats().end(), [&](const Matrix& j) {
    return linalg::commutator_norm(j, av) <= kCommutatorTolerance;
  });
}

bool quadratic_pair_commutes(const Algebra2Step& alg, const Matrix& a, const Matrix& b) {
  if (!quadratic_is_integral(alg, a) || !quadratic_is_integral(alg, b)) {
    throw InputError("both maps must define quadratic first integrals");
  }
  const Matrix av = v_block(alg, a);
  const Matrix bv = v_block(alg, b);
  const Matrix comm = av * bv - bv * av;
  return std::all_of(alg.j_mats().begin(), alg.j_mats().end(), [&](const Matrix& j) {
    return (j * comm).norm() <= kCommutatorTolerance;
  });
}

Matrix psi(const Matrix& a, const Matrix& j) {
  if (linalg::max_abs(a - a.transpose()) > scaled(a)) throw InputError("psi: A is not symmetric");
  require_commuting_with(a, j, "psi: A");
  return j * a;
}

Matrix psi_inverse(const Matrix& b, const Matrix& j) {
  if (linalg::max_abs(b + b.transpose()) > scaled(b)) throw InputError("psi_inverse: B is not skew");
  require_commuting_with(b, j, "psi_inverse: B");
  return -j * b;
}

FirstIntegral killing_to_integral(const NilpotentGroup& g, const IsometryAlgebraElement& x) {
  const auto& a = g.algebra();
  a.check(x.translation);
  std::vector<std::pair<double, FirstIntegral>> terms;
  terms.emplace_back(1.0, FirstIntegral::rotation(g, x.t));
  for (int k = 0; k < a.dim_v(); ++k) {
    if (x.translation(k) != 0.0) terms.emplace_back(x.translation(k), FirstIntegral::translation(g, k));
  }
  const Vector z = a.z_part(x.translation);
  if (z.squaredNorm() != 0.0) {
    terms.emplace_back(1.0, FirstIntegral::linear_central(g, z));
  }
  return FirstIntegral::combination(g, terms).renamed("f_X*");
}

Vector killing_field(const NilpotentGroup& g, const IsometryAlgebraElement& x,
                     const GroupElement& p) {
  const auto& a = g.algebra();
  a.check(p);
  // Rotation part: d/ds (exp(sT) p_v, p_z).
  Vector field = a.from_v(x.t * a.v_part(p));
  // Translation part: d/ds exp(sU) p = U + 1/2 [U, p].
  field += x.translation + 0.5 * a.bracket(x.translation, p);
  return field;
}

Matrix butler_annihilator(const Algebra2Step& alg, const AlgebraVector& lambda) {
  alg.check(lambda);
  const Matrix ker = linalg::kernel(alg.j_of(alg.z_part(lambda)));
  Matrix cols = Matrix::Zero(alg.dim(), ker.cols() + alg.dim_z());
  cols.topLeftCorner(alg.dim_v(), ker.cols()) = ker;
  cols.bottomRightCorner(alg.dim_z(), alg.dim_z()) = Matrix::Identity(alg.dim_z(), alg.dim_z());
  return linalg::orthonormalize(cols, alg.metric());
}

int annihilator_bracket_dim(const Algebra2Step& alg, const AlgebraVector& lambda,
                            const AlgebraVector& mu) {
  const Matrix a = butler_annihilator(alg, lambda);
  const Matrix b = butler_annihilator(alg, mu);
  Matrix brackets(alg.dim_z(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      brackets.col(i * b.cols() + j) = alg.z_part(alg.bracket(a.col(i), b.col(j)));
  if (brackets.size() == 0) return 0;
  double jscale = 1.0;
  for (const auto& j : alg.j_mats()) jscale = std::max(jscale, j.norm());
  const Vector s = Eigen::JacobiSVD<Matrix>(brackets).singularValues();
  return static_cast<int>((s.array() > linalg::kRankTolerance * jscale).count());
}

ButlerResult butler_predicate(const Algebra2Step& alg, int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("butler predicate needs at least one sample");
  std::vector<AlgebraVector> lambdas, mus;
  std::vector<int> dim_l, dim_m;
  int min_dim = alg.dim();
  for (int s = 0; s < samples; ++s) {
    SampleRng rng(seed, static_cast<std::uint64_t>(s));
    lambdas.push_back(rng.normal_vector(alg.dim()));
    mus.push_back(rng.normal_vector(alg.dim()));
    dim_l.push_back(static_cast<int>(butler_annihilator(alg, lambdas.back()).cols()));
    dim_m.push_back(static_cast<int>(butler_annihilator(alg, mus.back()).cols()));
    min_dim = std::min({min_dim, dim_l.back(), dim_m.back()});
  }
  ButlerResult out;
  out.samples = samples;
  out.min_annihilator_dim = min_dim;
  int positive = 0;
  for (int s = 0; s < samples; ++s) {
    if (dim_l[s] != min_dim || dim_m[s] != min_dim) continue;
    if (annihilator_bracket_dim(alg, lambdas[s], mus[s]) > 0) {
      ++positive;
      if (out.witnesses.size() < 5) out.witnesses.push_back(s);
    }
  }
  out.positive_fraction = static_cast<double>(positive) / samples;
  out.non_integrable = out.positive_fraction >= 0.99;
  return out;
}

}  // namespace nilflow
