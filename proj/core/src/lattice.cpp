#include "nilflow/lattice.hpp"

#include <cmath>
#include <string>

#include "nilflow/errors.hpp"

namespace nilflow {

LatticeSpec::LatticeSpec(std::vector<long long> r) : r_(std::move(r)) {
  if (r_.empty()) throw ConfigError("lattice needs at least one r_i");
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (r_[i] < 1) throw ConfigError("lattice r_i must be positive integers");
    if (i > 0 && r_[i] % r_[i - 1] != 0) {
      throw ConfigError("lattice r must satisfy r_" + std::to_string(i) + " | r_" +
                        std::to_string(i + 1));
    }
  }
}

GroupElement LatticeSpec::element(const std::vector<long long>& xm,
                                  const std::vector<long long>& ym, long long z) const {
  if (static_cast<int>(xm.size()) != n() || static_cast<int>(ym.size()) != n()) {
    throw InputError("lattice multipliers have wrong length");
  }
  GroupElement q = GroupElement::Zero(2 * n() + 1);
  for (int i = 0; i < n(); ++i) {
    q(2 * i) = static_cast<double>(r_[i] * xm[i]);
    q(2 * i + 1) = static_cast<double>(2 * ym[i]);
  }
  q(2 * n()) = static_cast<double>(z);
  return q;
}

GroupElement LatticeSpec::random_element(SampleRng& rng, long long range) const {
  std::vector<long long> xm(n()), ym(n());
  for (int i = 0; i < n(); ++i) {
    xm[i] = rng.integer(-range, range);
    ym[i] = rng.integer(-range, range);
  }
  return element(xm, ym, rng.integer(-range, range));
}

namespace {

bool multiple_of(double x, double step, double tol) {
  const double q = x / step;
  return std::abs(q - std::round(q)) <= tol;
}

}  // namespace

bool contains(const LatticeSpec& lattice, const GroupElement& q, double tol) {
  const int n = lattice.n();
  if (q.size() != 2 * n + 1 || !q.allFinite()) return false;
  for (int i = 0; i < n; ++i) {
    if (!multiple_of(q(2 * i), static_cast<double>(lattice.r()[i]), tol)) return false;
    if (!multiple_of(q(2 * i + 1), 2.0, tol)) return false;
  }
  return multiple_of(q(2 * n), 1.0, tol);
}

TangentState act(const NilpotentGroup& g, const LatticeSpec& lattice, const GroupElement& q,
                 const TangentState& s) {
  check_state(g, s);
  if (g.dim() != 2 * lattice.n() + 1) throw InputError("lattice and group dimensions differ");
  if (!contains(lattice, q)) throw InputError("element is not in the lattice");
  return {g.mul(q, s.p), s.Y};
}

double smoothed_integral(const NilpotentGroup& g, int k, const TangentState& s, bool damped) {
  return eval(FirstIntegral::smoothed(g, k, damped), s);
}

double shift_multiple(const NilpotentGroup& g, int k, const GroupElement& q,
                      const TangentState& s) {
  const FirstIntegral fk = FirstIntegral::translation(g, k);
  const double f = eval(FirstIntegral::linear_central(g, Vector::Ones(1)), s);
  if (std::abs(f) <= integral::kSmoothCutoff) throw InputError("f_Z1 vanishes at the state");
  return (eval(fk, {g.mul(q, s.p), s.Y}) - eval(fk, s)) / f;
}

Family quotient_family(const NilpotentGroup& g, const LatticeSpec& lattice, bool even_index) {
  const auto& a = g.algebra();
  if (a.dim_z() != 1 || a.dim_v() != 2 * lattice.n()) {
    throw InputError("quotient family needs H_n with n matching the lattice");
  }
  const int n = lattice.n();
  Family fam{even_index ? "quotient-Fprime" : "quotient-F",
             {FirstIntegral::linear_central(g, Vector::Ones(1)).renamed("f_Z1")}};
  for (int i = 0; i < n; ++i) {
    Matrix a_i = Matrix::Zero(2 * n, 2 * n);
    a_i(2 * i, 2 * i) = a_i(2 * i + 1, 2 * i + 1) = 1.0;
    fam.members.push_back(FirstIntegral::quadratic(g, a_i).renamed("g_A" + std::to_string(i + 1)));
  }
  for (int k = 0; k < n; ++k) {
    const int idx = 2 * k + (even_index ? 1 : 0);
    fam.members.push_back(
        FirstIntegral::smoothed(g, idx, true).renamed("Fbar_" + std::to_string(idx + 1)));
  }
  return fam;
}

}  // namespace nilflow
