#include "nilflow/symplectic.hpp"

#include <cmath>
#include <string>

#include "nilflow/errors.hpp"

namespace nilflow {

namespace {

void check_pair(const Algebra2Step& a, const TangentVectorPair& x) {
  a.check(x.U);
  a.check(x.V);
}

}  // namespace

double omega(const Algebra2Step& a, const TangentState& s, const TangentVectorPair& x,
             const TangentVectorPair& y) {
  check_pair(a, x);
  check_pair(a, y);
  return a.inner(x.U, y.V) - a.inner(x.V, y.U) + a.inner(s.Y, a.bracket(x.U, y.U));
}

Matrix omega_matrix(const Algebra2Step& a, const TangentState& s) {
  const int n = a.dim();
  const auto basis_pair = [&](int k) {
    TangentVectorPair e{a.zero(), a.zero()};
    if (k < n) {
      e.U(k) = 1.0;
    } else {
      e.V(k - n) = 1.0;
    }
    return e;
  };
  Matrix m(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) m(i, j) = omega(a, s, basis_pair(i), basis_pair(j));
  return m;
}

TangentVectorPair grad_to_hamiltonian(const Algebra2Step& a, const AlgebraVector& y,
                                      const TangentVectorPair& grad) {
  check_pair(a, grad);
  return {grad.V, a.ad_transpose(grad.V, y) - grad.U};
}

double poisson(const Algebra2Step& a, const TangentState& s, const TangentVectorPair& grad_f,
               const TangentVectorPair& grad_g) {
  check_pair(a, grad_f);
  check_pair(a, grad_g);
  return a.inner(grad_g.V, grad_f.U) - a.inner(grad_f.V, grad_g.U) -
         a.inner(s.Y, a.bracket(grad_f.V, grad_g.V));
}

double poisson_jmap(const Algebra2Step& a, const TangentState& s,
                    const TangentVectorPair& grad_f, const TangentVectorPair& grad_g) {
  check_pair(a, grad_f);
  check_pair(a, grad_g);
  const Matrix j = a.j_of(a.z_part(s.Y));
  return a.inner(grad_g.V, grad_f.U) - a.inner(grad_f.V, grad_g.U) +
         a.inner_v(j * a.v_part(grad_g.V), a.v_part(grad_f.V));
}

double first_integral_residual(const Algebra2Step& a, const TangentState& s,
                               const TangentVectorPair& grad) {
  check_pair(a, grad);
  return a.inner(s.Y, grad.U) - a.inner(s.Y, a.bracket(grad.V, s.Y));
}

TangentVectorPair numeric_gradient(const NilpotentGroup& g, const ScalarField& f,
                                   const TangentState& s, double step) {
  if (!(step > 0.0)) throw InputError("numeric gradient step must be positive");
  check_state(g, s);
  const auto& a = g.algebra();
  const int n = a.dim();
  const auto checked = [](double v, const char* what, int i) {
    if (!std::isfinite(v)) {
      throw NumericError(std::string("non-finite value while differentiating along ") + what +
                         " direction " + std::to_string(i));
    }
    return v;
  };

  Vector du(n), dv(n);
  for (int i = 0; i < n; ++i) {
    const double h = step * (1.0 + std::abs(s.p(i)));
    const AlgebraVector e = h * a.basis(i);
    const double fp = checked(f({g.mul(s.p, e), s.Y}), "U", i);
    const double fm = checked(f({g.mul(s.p, -e), s.Y}), "U", i);
    du(i) = (fp - fm) / (2.0 * h);
  }
  for (int i = 0; i < n; ++i) {
    const double h = step * (1.0 + std::abs(s.Y(i)));
    TangentState plus = s, minus = s;
    plus.Y(i) += h;
    minus.Y(i) -= h;
    const double fp = checked(f(plus), "V", i);
    const double fm = checked(f(minus), "V", i);
    dv(i) = (fp - fm) / (2.0 * h);
  }
  if (a.has_standard_metric()) return {du, dv};
  const auto llt = a.metric().llt();
  return {llt.solve(du), llt.solve(dv)};
}

}  // namespace nilflow
