#include "nilflow/integrals.hpp"

#include <cmath>
#include <numbers>

#include "nilflow/errors.hpp"

namespace nilflow {

namespace {

constexpr double kTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double scaled_tol(const Matrix& m) { return kTol * std::max(1.0, linalg::max_abs(m)); }

/// J for the canonical H_n check used by rotation integrals.
const Matrix& canonical_j(const Algebra2Step& a) {
  if (a.dim_z() != 1 || !a.has_standard_metric()) {
    throw InputError("rotation integrals require dim z = 1 and the canonical metric");
  }
  const Matrix& j = a.j_mats()[0];
  const Matrix id = Matrix::Identity(a.dim_v(), a.dim_v());
  if (linalg::max_abs(j * j + id) > kTol) {
    throw InputError("rotation integrals require j(Z_1)^2 = -1");
  }
  return j;
}

Vector z_coefficients(const Algebra2Step& a, const Vector& b) {
  if (a.has_standard_metric()) return b;
  return a.metric().bottomRightCorner(a.dim_z(), a.dim_z()).llt().solve(b);
}

double translation_value(const Algebra2Step& a, const integral::KillingTranslation& k,
                         const TangentState& s) {
  const Vector yv = a.v_part(s.Y);
  const Vector wv = a.v_part(s.W());
  return a.inner_v(yv, k.x) - a.inner_v(a.j_of(a.z_part(s.Y)) * wv, k.x);
}

TangentVectorPair translation_grad(const Algebra2Step& a, const integral::KillingTranslation& k,
                                   const TangentState& s) {
  const Vector wv = a.v_part(s.W());
  Vector b(a.dim_z());
  for (int i = 0; i < a.dim_z(); ++i) b(i) = a.inner_v(a.j_mats()[i] * wv, k.x);
  return {a.from_v(a.j_of(a.z_part(s.Y)) * k.x), a.compose(k.x, -z_coefficients(a, b))};
}

double central_velocity(const Algebra2Step& a, const TangentState& s) {
  return a.inner(s.Y, a.basis(a.dim_v()));
}

double smoothed_value(const Algebra2Step& a, const integral::Smoothed& sm, const TangentState& s) {
  const double f = central_velocity(a, s);
  if (std::abs(f) <= integral::kSmoothCutoff) return 0.0;
  const double hat = std::sin(2.0 * std::numbers::pi * translation_value(a, sm.base, s) / f);
  return sm.damped ? std::exp(-1.0 / (f * f)) * hat : hat;
}

TangentVectorPair smoothed_grad(const Algebra2Step& a, const integral::Smoothed& sm,
                                const TangentState& s) {
  const double f = central_velocity(a, s);
  if (std::abs(f) <= integral::kSmoothCutoff) return {a.zero(), a.zero()};
  const double big_f = translation_value(a, sm.base, s);
  const TangentVectorPair d_big_f = translation_grad(a, sm.base, s);
  const TangentVectorPair df{a.zero(), a.basis(a.dim_v())};
  const double phase = 2.0 * std::numbers::pi * big_f / f;
  const double hat = std::sin(phase);
  const TangentVectorPair d_hat =
      (std::cos(phase) * 2.0 * std::numbers::pi / (f * f)) * (f * d_big_f - big_f * df);
  if (!sm.damped) return d_hat;
  const double damp = std::exp(-1.0 / (f * f));
  return damp * d_hat + (damp * 2.0 / (f * f * f) * hat) * df;
}

std::string one_based(int k) { return std::to_string(k + 1); }

}  // namespace

FirstIntegral FirstIntegral::energy(const NilpotentGroup& g) {
  return {std::make_shared<const NilpotentGroup>(g), integral::Energy{}, "E"};
}

FirstIntegral FirstIntegral::linear_central(const NilpotentGroup& g, const Vector& z0) {
  if (z0.size() != g.algebra().dim_z()) throw InputError("central vector has wrong length");
  return {std::make_shared<const NilpotentGroup>(g), integral::LinearCentral{z0}, "f_Z"};
}

FirstIntegral FirstIntegral::quadratic(const NilpotentGroup& g, const Matrix& a_in) {
  const auto& a = g.algebra();
  Matrix full;
  if (a_in.rows() == a.dim_v() && a_in.cols() == a.dim_v()) {
    full = Matrix::Zero(a.dim(), a.dim());
    full.topLeftCorner(a.dim_v(), a.dim_v()) = a_in;
  } else if (a_in.rows() == a.dim() && a_in.cols() == a.dim()) {
    full = a_in;
    if (linalg::max_abs(full.rightCols(a.dim_z())) > scaled_tol(full)) {
      throw InputError("quadratic map must annihilate z");
    }
  } else {
    throw InputError("quadratic map has wrong size");
  }
  const Matrix ga = a.metric() * full;
  if (linalg::max_abs(ga - ga.transpose()) > scaled_tol(ga)) {
    throw InputError("quadratic map is not symmetric for the metric");
  }
  return {std::make_shared<const NilpotentGroup>(g), integral::Quadratic{full}, "g_A"};
}

FirstIntegral FirstIntegral::translation(const NilpotentGroup& g, int k) {
  const auto& a = g.algebra();
  if (k < 0 || k >= a.dim_v()) throw InputError("translation index out of range");
  return {std::make_shared<const NilpotentGroup>(g),
          integral::KillingTranslation{Vector::Unit(a.dim_v(), k), k}, "F_" + one_based(k)};
}

FirstIntegral FirstIntegral::translation_along(const NilpotentGroup& g, const Vector& x) {
  if (x.size() != g.algebra().dim_v()) throw InputError("translation vector has wrong length");
  return {std::make_shared<const NilpotentGroup>(g), integral::KillingTranslation{x, -1}, "F_x"};
}

FirstIntegral FirstIntegral::rotation(const NilpotentGroup& g, const Matrix& t) {
  const auto& a = g.algebra();
  const Matrix& j = canonical_j(a);
  if (t.rows() != a.dim_v() || t.cols() != a.dim_v()) throw InputError("T has wrong size");
  if (linalg::max_abs(t + t.transpose()) > scaled_tol(t)) throw InputError("T is not skew");
  if (linalg::max_abs(j * t - t * j) > scaled_tol(t)) throw InputError("T does not commute with J");
  return {std::make_shared<const NilpotentGroup>(g), integral::KillingRotation{t, -j * t}, "F_T"};
}

FirstIntegral FirstIntegral::smoothed(const NilpotentGroup& g, int k, bool damped) {
  const auto& a = g.algebra();
  if (a.dim_z() != 1) throw InputError("smoothed integrals require dim z = 1");
  if (k < 0 || k >= a.dim_v()) throw InputError("translation index out of range");
  return {std::make_shared<const NilpotentGroup>(g),
          integral::Smoothed{integral::KillingTranslation{Vector::Unit(a.dim_v(), k), k}, damped},
          (damped ? "barF_" : "hatF_") + one_based(k)};
}

FirstIntegral FirstIntegral::combination(
    const NilpotentGroup& g, const std::vector<std::pair<double, FirstIntegral>>& terms) {
  integral::Combination c;
  for (const auto& [w, f] : terms) {
    if (f.group().dim() != g.dim()) throw InputError("combination terms live on different groups");
    c.terms.emplace_back(w, std::make_shared<const FirstIntegral>(f));
  }
  return {std::make_shared<const NilpotentGroup>(g), std::move(c), "combination"};
}

FirstIntegral FirstIntegral::custom(const NilpotentGroup& g, std::string name, ScalarField f) {
  if (!f) throw InputError("custom integral needs an evaluator");
  return {std::make_shared<const NilpotentGroup>(g), integral::Custom{std::move(f)},
          std::move(name)};
}

FirstIntegral FirstIntegral::renamed(std::string name) const {
  FirstIntegral out = *this;
  out.name_ = std::move(name);
  return out;
}

bool FirstIntegral::has_exact_gradient() const {
  return std::visit(overloaded{
                        [](const integral::Custom&) { return false; },
                        [](const integral::Combination& c) {
                          for (const auto& t : c.terms)
                            if (!t.second->has_exact_gradient()) return false;
                          return true;
                        },
                        [](const auto&) { return true; },
                    },
                    kind_);
}

double eval(const FirstIntegral& fi, const TangentState& s) {
  const auto& g = fi.group();
  const auto& a = g.algebra();
  check_state(g, s);
  return std::visit(
      overloaded{
          [&](const integral::Energy&) { return 0.5 * a.inner(s.Y, s.Y); },
          [&](const integral::LinearCentral& l) { return a.inner(s.Y, a.from_z(l.z0)); },
          [&](const integral::Quadratic& q) { return 0.5 * a.inner(s.Y, q.a * s.Y); },
          [&](const integral::KillingTranslation& k) { return translation_value(a, k, s); },
          [&](const integral::KillingRotation& r) {
            const Vector wv = a.v_part(s.W());
            const Vector yv = a.v_part(s.Y);
            return (r.t * wv).dot(yv) - 0.5 * (r.a * wv).dot(wv) * s.Y(a.dim_v());
          },
          [&](const integral::Smoothed& sm) { return smoothed_value(a, sm, s); },
          [&](const integral::Combination& c) {
            double v = 0.0;
            for (const auto& [w, f] : c.terms) v += w * eval(*f, s);
            return v;
          },
          [&](const integral::Custom& c) { return c.f(s); },
      },
      fi.kind());
}

TangentVectorPair grad(const FirstIntegral& fi, const TangentState& s) {
  const auto& g = fi.group();
  const auto& a = g.algebra();
  check_state(g, s);
  return std::visit(
      overloaded{
          [&](const integral::Energy&) { return TangentVectorPair{a.zero(), s.Y}; },
          [&](const integral::LinearCentral& l) {
            return TangentVectorPair{a.zero(), a.from_z(l.z0)};
          },
          [&](const integral::Quadratic& q) { return TangentVectorPair{a.zero(), q.a * s.Y}; },
          [&](const integral::KillingTranslation& k) { return translation_grad(a, k, s); },
          [&](const integral::KillingRotation& r) {
            const Vector wv = a.v_part(s.W());
            const Vector yv = a.v_part(s.Y);
            const double yz = s.Y(a.dim_v());
            Vector z(1);
            z(0) = -0.5 * (r.a * wv).dot(wv);
            return TangentVectorPair{a.from_v(-yz * (r.a * wv) - r.t * yv), a.compose(r.t * wv, z)};
          },
          [&](const integral::Smoothed& sm) { return smoothed_grad(a, sm, s); },
          [&](const integral::Combination& c) {
            TangentVectorPair out{a.zero(), a.zero()};
            for (const auto& [w, f] : c.terms) out += w * grad(*f, s);
            return out;
          },
          [&](const integral::Custom& c) { return numeric_gradient(g, c.f, s); },
      },
      fi.kind());
}

ScalarField as_field(const FirstIntegral& f) {
  return [f](const TangentState& s) { return eval(f, s); };
}

double poisson(const FirstIntegral& f, const FirstIntegral& g, const TangentState& s) {
  return poisson(f.group().algebra(), s, grad(f, s), grad(g, s));
}

FirstIntegral poisson_function(const FirstIntegral& f, const FirstIntegral& g) {
  return FirstIntegral::custom(f.group(), "{" + f.name() + "," + g.name() + "}",
                               [f, g](const TangentState& s) { return poisson(f, g, s); });
}

FirstIntegral product(const FirstIntegral& f, const FirstIntegral& g) {
  return FirstIntegral::custom(f.group(), f.name() + "*" + g.name(),
                               [f, g](const TangentState& s) { return eval(f, s) * eval(g, s); });
}

double residual(const FirstIntegral& f, const TangentState& s) {
  return first_integral_residual(f.group().algebra(), s, grad(f, s));
}

}  // namespace nilflow
