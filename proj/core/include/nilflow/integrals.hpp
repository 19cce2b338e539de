#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nilflow/symplectic.hpp"

namespace nilflow {

class FirstIntegral;

namespace integral {

/// E = 1/2 <Y,Y>.
struct Energy {};

/// f_{Z0} = <Y, Z0> for a central Z0 (z coordinates).
struct LinearCentral {
  Vector z0;
};

/// g_A = 1/2 <Y, A Y> for A symmetric in the metric with A z = 0.
struct Quadratic {
  Matrix a;
};

/// Momentum of the right-invariant Killing field generated by x in v:
///   F_x(p,Y) = <Y, x> - <j(Y_z) W_v, x>.
/// On H_n with x = X_k this is F_k.
struct KillingTranslation {
  Vector x;
  /// Basis index (0-based) when x = X_{index+1}; -1 otherwise.
  int index = -1;
};

/// Momentum of the isotropy Killing field of T (skew, [J,T] = 0) on the
/// canonical H_n:
///   F_T(p,Y) = <T W_v, Y_v> - 1/2 <A W_v, W_v> <Z_1, Y>,  A = -J T.
struct KillingRotation {
  Matrix t;
  Matrix a;
};

/// Lattice-invariant functions built from F_x and f = <Y, Z_1>:
///   hat F = sin(2 pi F_x / f),   bar F = exp(-1/f^2) hat F (damped).
/// Both are defined as 0 where |f| <= kSmoothCutoff.
struct Smoothed {
  KillingTranslation base;
  bool damped = true;
};

/// sum_i w_i F_i.
struct Combination {
  std::vector<std::pair<double, std::shared_ptr<const FirstIntegral>>> terms;
};

/// Arbitrary evaluator; gradients are numeric.
struct Custom {
  ScalarField f;
};

inline constexpr double kSmoothCutoff = 1e-12;

}  // namespace integral

/// Tagged description of a function on TN together with exact value and
/// gradient rules. Gradients are taken with respect to the metric of the
/// owning group's algebra, so the same rules serve the canonical and the P
/// metrics. Cheap to copy.
class FirstIntegral {
 public:
  using Kind = std::variant<integral::Energy, integral::LinearCentral, integral::Quadratic,
                            integral::KillingTranslation, integral::KillingRotation,
                            integral::Smoothed, integral::Combination, integral::Custom>;

  static FirstIntegral energy(const NilpotentGroup& g);
  static FirstIntegral linear_central(const NilpotentGroup& g, const Vector& z0);
  /// Accepts A on v (dim_v square, extended by zero on z) or on all of n.
  static FirstIntegral quadratic(const NilpotentGroup& g, const Matrix& a);
  /// F_k for the coordinate basis vector X_{k+1} of v (0-based k).
  static FirstIntegral translation(const NilpotentGroup& g, int k);
  static FirstIntegral translation_along(const NilpotentGroup& g, const Vector& x);
  static FirstIntegral rotation(const NilpotentGroup& g, const Matrix& t);
  static FirstIntegral smoothed(const NilpotentGroup& g, int k, bool damped = true);
  static FirstIntegral combination(
      const NilpotentGroup& g, const std::vector<std::pair<double, FirstIntegral>>& terms);
  static FirstIntegral custom(const NilpotentGroup& g, std::string name, ScalarField f);

  const Kind& kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const NilpotentGroup& group() const { return *group_; }
  FirstIntegral renamed(std::string name) const;

  /// True unless the gradient is computed by finite differences.
  bool has_exact_gradient() const;

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(kind_);
  }

 private:
  FirstIntegral(std::shared_ptr<const NilpotentGroup> g, Kind kind, std::string name)
      : group_(std::move(g)), kind_(std::move(kind)), name_(std::move(name)) {}

  std::shared_ptr<const NilpotentGroup> group_;
  Kind kind_;
  std::string name_;
};

double eval(const FirstIntegral& f, const TangentState& s);
TangentVectorPair grad(const FirstIntegral& f, const TangentState& s);

/// f as a plain scalar field.
ScalarField as_field(const FirstIntegral& f);

/// {f, g} at s from the exact (or numeric) gradients.
double poisson(const FirstIntegral& f, const FirstIntegral& g, const TangentState& s);

/// The function (p,Y) -> {f,g}(p,Y), gradients numeric.
FirstIntegral poisson_function(const FirstIntegral& f, const FirstIntegral& g);

/// Pointwise product, gradients numeric.
FirstIntegral product(const FirstIntegral& f, const FirstIntegral& g);

/// First-integral residual {f, E} of f at s.
double residual(const FirstIntegral& f, const TangentState& s);

/// A named list of functions, e.g. one of the commuting families.
struct Family {
  std::string name;
  std::vector<FirstIntegral> members;

  std::size_t size() const { return members.size(); }
};

}  // namespace nilflow
