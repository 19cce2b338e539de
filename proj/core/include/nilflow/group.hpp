#pragma once

#include "nilflow/algebra.hpp"

namespace nilflow {

/// Point of the group in exponential coordinates.
using GroupElement = Eigen::VectorXd;

/// Simply connected 2-step nilpotent group of an Algebra2Step, modelled in
/// exponential coordinates:
///
///   (v, z)(v', z') = (v + v', z + z' + 1/2 [v, v'])
///
/// For H_n this is (v+v', z+z' - 1/2 v^T J v'). exp and log are coordinate
/// identities.
class NilpotentGroup {
 public:
  explicit NilpotentGroup(Algebra2Step algebra) : algebra_(std::move(algebra)) {}

  const Algebra2Step& algebra() const { return algebra_; }
  int dim() const { return algebra_.dim(); }

  GroupElement identity() const { return GroupElement::Zero(dim()); }
  GroupElement mul(const GroupElement& p, const GroupElement& q) const;
  GroupElement inv(const GroupElement& p) const;
  GroupElement exp_map(const AlgebraVector& x) const;
  AlgebraVector log_map(const GroupElement& p) const;

  /// Coordinates of the left-invariant fields at p, one column per basis
  /// vector of the algebra: column i is d/ds|0 p exp(s e_i).
  Matrix left_invariant_frame(const GroupElement& p) const;

  /// frame(p) * u without forming the matrix.
  Vector push_forward(const GroupElement& p, const AlgebraVector& u) const;

  /// Inverse of push_forward: left-trivializes a coordinate velocity at p.
  AlgebraVector pull_back(const GroupElement& p, const Vector& dp) const;

 private:
  Algebra2Step algebra_;
};

/// Point (p, Y) of TN ~ N x n; Y is the left-trivialized velocity.
struct TangentState {
  GroupElement p;
  AlgebraVector Y;

  /// log p. Exponential coordinates make this the coordinate vector itself.
  const AlgebraVector& W() const { return p; }
};

/// Tangent vector (U, V) to TN at some (p, Y): U moves p along p exp(tU),
/// V moves Y linearly.
struct TangentVectorPair {
  AlgebraVector U;
  AlgebraVector V;

  TangentVectorPair& operator+=(const TangentVectorPair& o) {
    U += o.U;
    V += o.V;
    return *this;
  }
  friend TangentVectorPair operator*(double s, const TangentVectorPair& a) {
    return {s * a.U, s * a.V};
  }
  friend TangentVectorPair operator+(TangentVectorPair a, const TangentVectorPair& b) {
    a += b;
    return a;
  }
  friend TangentVectorPair operator-(const TangentVectorPair& a, const TangentVectorPair& b) {
    return {a.U - b.U, a.V - b.V};
  }
  /// Concatenated (U, V) coordinates.
  Vector flat() const;
};

/// Throws InputError unless both p and Y conform to the group.
void check_state(const NilpotentGroup& g, const TangentState& s);

}  // namespace nilflow
