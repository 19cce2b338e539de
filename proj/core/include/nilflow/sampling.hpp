#pragma once

#include <cstdint>
#include <random>

#include "nilflow/group.hpp"

namespace nilflow {

/// SplitMix64 finalizer of seed ^ counter. Every sample owns an engine seeded
/// this way, so results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t counter) : engine_(derive_seed(seed, counter)) {}

  double uniform(double lo, double hi);
  double normal();
  Vector uniform_vector(int n, double box);
  Vector normal_vector(int n);
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct SamplingOptions {
  /// Coordinates of p and Y are uniform in [-box, box].
  double box = 2.0;
  /// Reject states whose central velocity norm is below this value.
  double min_abs_yz = 0.0;
};

/// Deterministic random state number `index` of the stream `seed`.
TangentState sample_state(const NilpotentGroup& g, std::uint64_t seed, std::uint64_t index,
                          const SamplingOptions& opts = {});

/// Random symmetric matrix with entries of order one.
Matrix random_symmetric(SampleRng& rng, int n);
/// Random skew matrix with entries of order one.
Matrix random_skew(SampleRng& rng, int n);

}  // namespace nilflow
