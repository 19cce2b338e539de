#pragma once

#include <cstdint>
#include <vector>

#include "nilflow/integrals.hpp"
#include "nilflow/sampling.hpp"

namespace nilflow {

/// Lattice Lambda_r of H_n: v = (x, y) with x_i in r_i Z, y_i in 2Z and
/// z in Z. With the interleaved coordinates used throughout, x_i is slot
/// 2i-1 and y_i is slot 2i of v.
class LatticeSpec {
 public:
  /// Throws ConfigError unless every r_i >= 1 and r_1 | r_2 | ... | r_n.
  explicit LatticeSpec(std::vector<long long> r);

  int n() const { return static_cast<int>(r_.size()); }
  const std::vector<long long>& r() const { return r_; }

  /// Element with x = r * xm, y = 2 * ym, z.
  GroupElement element(const std::vector<long long>& xm, const std::vector<long long>& ym,
                       long long z) const;

  /// Random element with multipliers in [-range, range].
  GroupElement random_element(SampleRng& rng, long long range) const;

 private:
  std::vector<long long> r_;
};

inline constexpr double kLatticeTolerance = 1e-9;

bool contains(const LatticeSpec& lattice, const GroupElement& q, double tol = kLatticeTolerance);

/// (q p, Y). Throws InputError when q is not in the lattice.
TangentState act(const NilpotentGroup& g, const LatticeSpec& lattice, const GroupElement& q,
                 const TangentState& s);

/// bar F_k (damped) or hat F_k at s, 0-based k.
double smoothed_integral(const NilpotentGroup& g, int k, const TangentState& s,
                         bool damped = true);

/// (F_k(qp,Y) - F_k(p,Y)) / f_{Z_1}(p,Y); an integer for lattice q.
double shift_multiple(const NilpotentGroup& g, int k, const GroupElement& q,
                      const TangentState& s);

/// {f_{Z_1}, g_{A_i}, bar F_{2k-1}} or, with even_index, the bar F_{2k} variant.
Family quotient_family(const NilpotentGroup& g, const LatticeSpec& lattice,
                       bool even_index = false);

}  // namespace nilflow
