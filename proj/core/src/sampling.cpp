#include "nilflow/sampling.hpp"

#include <cmath>

namespace nilflow {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = (seed ^ counter) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SampleRng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double SampleRng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Vector SampleRng::uniform_vector(int n, double box) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(-box, box);
  return v;
}

Vector SampleRng::normal_vector(int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal();
  return v;
}

std::int64_t SampleRng::integer(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

TangentState sample_state(const NilpotentGroup& g, std::uint64_t seed, std::uint64_t index,
                          const SamplingOptions& opts) {
  SampleRng rng(seed, index);
  const auto& a = g.algebra();
  TangentState s{rng.uniform_vector(a.dim(), opts.box), rng.uniform_vector(a.dim(), opts.box)};
  while (opts.min_abs_yz > 0.0 && s.Y.tail(a.dim_z()).norm() < opts.min_abs_yz) {
    s.Y.tail(a.dim_z()) = rng.uniform_vector(a.dim_z(), opts.box);
  }
  return s;
}

Matrix random_symmetric(SampleRng& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return 0.5 * (m + m.transpose());
}

Matrix random_skew(SampleRng& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return 0.5 * (m - m.transpose());
}

}  // namespace nilflow
