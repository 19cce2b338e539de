#include "nilflow/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nilflow/errors.hpp"
#include "nilflow/involution.hpp"

namespace nilflow {

namespace {

void require_n(int n) {
  if (n < 1) throw InputError("Heisenberg dimension n must be >= 1");
}

std::string idx(int i) { return std::to_string(i + 1); }

}  // namespace

Algebra2Step heisenberg_algebra(int n) {
  require_n(n);
  return Algebra2Step(2 * n, 1, {linalg::complex_structure(n)});
}

NilpotentGroup heisenberg_group(int n) { return NilpotentGroup(heisenberg_algebra(n)); }

Matrix plane_projection(int n, int i) {
  require_n(n);
  if (i < 0 || i >= n) throw InputError("plane index out of range");
  Matrix a = Matrix::Zero(2 * n, 2 * n);
  a(2 * i, 2 * i) = 1.0;
  a(2 * i + 1, 2 * i + 1) = 1.0;
  return a;
}

Matrix cartan_generator(int n, int i) { return linalg::complex_structure(n) * plane_projection(n, i); }

std::vector<Matrix> isotropy_basis(int n) {
  require_n(n);
  const int d = 2 * n;
  const Matrix j = linalg::complex_structure(n);
  std::vector<Matrix> basis;
  auto add = [&](Matrix b) {
    // Average over conjugation by J: projects skew maps onto the commutant.
    b = 0.5 * (b + j * b * j.transpose());
    for (const auto& e : basis) b -= (e.array() * b.array()).sum() * e;
    const double nb = b.norm();
    if (nb > 1e-10) basis.push_back(b / nb);
  };
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      Matrix e = Matrix::Zero(d, d);
      e(a, b) = 1.0;
      e(b, a) = -1.0;
      add(e);
    }
  }
  if (static_cast<int>(basis.size()) != n * n) {
    throw NumericError("isotropy basis has wrong dimension");
  }
  return basis;
}

Family family_g(const NilpotentGroup& g, const std::vector<Matrix>& torus) {
  const auto& a = g.algebra();
  if (a.dim_z() != 1) throw InputError("family G needs dim z = 1");
  const Matrix& j = a.j_mats()[0];
  Family fam{"G", {FirstIntegral::energy(g).renamed("E")}};
  for (std::size_t i = 0; i < torus.size(); ++i) {
    fam.members.push_back(FirstIntegral::quadratic(g, torus[i]).renamed("g_A" + idx(static_cast<int>(i))));
  }
  for (std::size_t i = 0; i < torus.size(); ++i) {
    fam.members.push_back(
        FirstIntegral::rotation(g, psi(torus[i], j)).renamed("F_T" + idx(static_cast<int>(i))));
  }
  return fam;
}

CanonicalFamilies canonical_families(int n) {
  const NilpotentGroup g = heisenberg_group(n);
  std::vector<Matrix> torus;
  for (int i = 0; i < n; ++i) torus.push_back(plane_projection(n, i));

  auto base = [&](const std::string& name) {
    Family fam{name, {FirstIntegral::linear_central(g, Vector::Ones(1)).renamed("f_Z1")}};
    for (int i = 0; i < n; ++i) {
      fam.members.push_back(FirstIntegral::quadratic(g, torus[i]).renamed("g_A" + idx(i)));
    }
    return fam;
  };
  Family f = base("F");
  Family fp = base("Fprime");
  for (int k = 0; k < n; ++k) {
    f.members.push_back(FirstIntegral::translation(g, 2 * k).renamed("F_" + idx(2 * k)));
    fp.members.push_back(FirstIntegral::translation(g, 2 * k + 1).renamed("F_" + idx(2 * k + 1)));
  }
  return {family_g(g, torus), std::move(f), std::move(fp)};
}

FirstIntegral PMetricSpec::translation(int k) const {
  if (k < 0 || k >= u.cols()) throw InputError("translation index out of range");
  return FirstIntegral::translation_along(group, u.col(k)).renamed("F~_" + idx(k));
}

PMetricSpec build_p_metric(const Matrix& p_tilde, double lambda) {
  const auto d = p_tilde.rows();
  if (d == 0 || d != p_tilde.cols() || d % 2 != 0) {
    throw ConfigError("P~ must be a square matrix of even size");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");
  const double scale = std::max(1.0, linalg::max_abs(p_tilde));
  if (!p_tilde.allFinite() || linalg::max_abs(p_tilde - p_tilde.transpose()) > 1e-12 * scale) {
    throw ConfigError("P~ must be symmetric");
  }
  const int n = static_cast<int>(d / 2);
  const Matrix j = linalg::complex_structure(n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p_tilde + p_tilde.transpose()));
  const Vector ev = es.eigenvalues();
  if (!(ev(0) > 0.0)) throw ConfigError("P~ must be positive definite");

  // Group eigenvalues into eigenspaces, then build {w, Jw} pairs inside each.
  const double eig_tol = 1e-9 * ev(d - 1);
  Matrix u(d, d);
  Vector pair_eigs(d);
  int filled = 0;
  for (Eigen::Index start = 0; start < d;) {
    Eigen::Index end = start + 1;
    while (end < d && ev(end) - ev(start) <= eig_tol) ++end;
    const Matrix q = es.eigenvectors().middleCols(start, end - start);
    const Matrix jq = j * q;
    if ((jq - q * (q.transpose() * jq)).norm() > 1e-8) {
      throw ConfigError("eigenspaces of P~ are not J-invariant");
    }
    const double mu = ev.segment(start, end - start).mean();
    for (Eigen::Index c = 0; c < q.cols() && filled < end; ++c) {
      Vector w = q.col(c);
      for (int k = static_cast<int>(start); k < filled; ++k) w -= u.col(k).dot(w) * u.col(k);
      const double nw = w.norm();
      if (nw < 1e-6) continue;
      w /= nw;
      u.col(filled) = w;
      u.col(filled + 1) = j * w;
      pair_eigs(filled) = pair_eigs(filled + 1) = mu;
      filled += 2;
    }
    if (filled != end) throw ConfigError("eigenspaces of P~ are not J-invariant");
    start = end;
  }

  Matrix metric = Matrix::Zero(d + 1, d + 1);
  metric.topLeftCorner(d, d) = 0.5 * (p_tilde + p_tilde.transpose());
  metric(d, d) = lambda;
  const Matrix j_p = lambda * metric.topLeftCorner(d, d).llt().solve(j);
  NilpotentGroup group(Algebra2Step(static_cast<int>(d), 1, {j_p}, metric));

  std::vector<Matrix> a_tilde;
  for (int i = 0; i < n; ++i) {
    a_tilde.push_back(u.col(2 * i) * u.col(2 * i).transpose() +
                      u.col(2 * i + 1) * u.col(2 * i + 1).transpose());
  }

  auto base = [&](const std::string& name) {
    Family fam{name, {FirstIntegral::linear_central(group, Vector::Ones(1)).renamed("f_Z1")}};
    for (int i = 0; i < n; ++i) {
      fam.members.push_back(FirstIntegral::quadratic(group, a_tilde[i]).renamed("g_A~" + idx(i)));
    }
    return fam;
  };
  Family f = base("F~");
  Family fp = base("F~prime");
  for (int k = 0; k < n; ++k) {
    f.members.push_back(
        FirstIntegral::translation_along(group, u.col(2 * k)).renamed("F~_" + idx(2 * k)));
    fp.members.push_back(
        FirstIntegral::translation_along(group, u.col(2 * k + 1)).renamed("F~_" + idx(2 * k + 1)));
  }
  return PMetricSpec{p_tilde, lambda, j_p, u, pair_eigs, std::move(a_tilde),
                     std::move(group), std::move(f), std::move(fp)};
}

}  // namespace nilflow
