#include <benchmark/benchmark.h>

#include "nilflow/geodesic.hpp"
#include "nilflow/heisenberg.hpp"

using namespace nilflow;

static void BM_Poisson(benchmark::State& st) {
  const auto fams = canonical_families(static_cast<int>(st.range(0)));
  const auto& f = fams.f.members;
  const auto s = sample_state(f.front().group(), 1, 0);
  for (auto _ : st) benchmark::DoNotOptimize(poisson(f[1], f.back(), s));
}
BENCHMARK(BM_Poisson)->Arg(1)->Arg(2)->Arg(3);

static void BM_RK4(benchmark::State& st) {
  const auto g = heisenberg_group(static_cast<int>(st.range(0)));
  const auto s = sample_state(g, 2, 0);
  for (auto _ : st) benchmark::DoNotOptimize(integrate(g, s, 1.0, 1e-3));
}
BENCHMARK(BM_RK4)->Arg(1)->Arg(3);

static void BM_RankCheck(benchmark::State& st) {
  const auto fams = canonical_families(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(rank_check(fams.g, 100, 3));
}
BENCHMARK(BM_RankCheck)->Arg(1)->Arg(2);

static void BM_Expm(benchmark::State& st) {
  const auto a = heisenberg_algebra(static_cast<int>(st.range(0)));
  SampleRng rng(4, 0);
  const Matrix k = random_skew(rng, a.dim());
  for (auto _ : st) benchmark::DoNotOptimize(linalg::expm(k));
}
BENCHMARK(BM_Expm)->Arg(1)->Arg(4);
BENCHMARK_MAIN();
