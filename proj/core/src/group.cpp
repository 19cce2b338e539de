#include "nilflow/group.hpp"

#include "nilflow/errors.hpp"

namespace nilflow {

GroupElement NilpotentGroup::mul(const GroupElement& p, const GroupElement& q) const {
  return p + q + 0.5 * algebra_.bracket(p, q);
}

GroupElement NilpotentGroup::inv(const GroupElement& p) const {
  algebra_.check(p);
  return -p;
}

GroupElement NilpotentGroup::exp_map(const AlgebraVector& x) const {
  algebra_.check(x);
  return x;
}

AlgebraVector NilpotentGroup::log_map(const GroupElement& p) const {
  algebra_.check(p);
  return p;
}

Matrix NilpotentGroup::left_invariant_frame(const GroupElement& p) const {
  const int n = dim();
  Matrix frame(n, n);
  for (int i = 0; i < n; ++i) frame.col(i) = push_forward(p, algebra_.basis(i));
  return frame;
}

Vector NilpotentGroup::push_forward(const GroupElement& p, const AlgebraVector& u) const {
  // d/ds|0 p exp(su) = u + 1/2 [p, u].
  return u + 0.5 * algebra_.bracket(p, u);
}

AlgebraVector NilpotentGroup::pull_back(const GroupElement& p, const Vector& dp) const {
  // The bracket only sees v parts, which push_forward leaves unchanged.
  return dp - 0.5 * algebra_.bracket(p, dp);
}

Vector TangentVectorPair::flat() const {
  Vector out(U.size() + V.size());
  out << U, V;
  return out;
}

void check_state(const NilpotentGroup& g, const TangentState& s) {
  if (s.p.size() != g.dim() || s.Y.size() != g.dim()) {
    throw InputError("tangent state does not conform to the group of dimension " +
                     std::to_string(g.dim()));
  }
}

}  // namespace nilflow
