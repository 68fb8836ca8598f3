#include <hofsearch/evaluator.hpp>
#include <hofsearch/growth.hpp>
#include <hofsearch/search.hpp>

#include <benchmark/benchmark.h>

using namespace hofsearch;

namespace {

const char* kQ = "Q(n) = Q(n - Q(n-1)) + Q(n - Q(n-2))";

void BM_GenerateRuskey(benchmark::State& state) {
  Recurrence rec = parse(kQ);
  std::vector<BigInt> ic{3, 6, 5, 3, 6, 8};
  for (auto _ : state) benchmark::DoNotOptimize(generate(rec, ic, state.range(0)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GenerateRuskey)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_SearchPeriod(benchmark::State& state) {
  Recurrence rec = parse(kQ);
  SearchOptions o;
  o.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(search(rec, static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_SearchPeriod)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_GrowthChain(benchmark::State& state) {
  // a_r(k) = a_{r+1}(k-1) + a_r(k-1) along a chain, a constant at the end
  const int m = static_cast<int>(state.range(0));
  PRSystem s;
  s.m = m;
  s.d = 1;
  s.inhomog.assign(static_cast<std::size_t>(m), IntPolynomial({BigInt(1)}, PolyVar::K));
  for (int r = 0; r + 1 < m; ++r) {
    s.coeffs.push_back({r, 1, r + 1, BigInt(1)});
    s.coeffs.push_back({r, 1, r, BigInt(1)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(compute_growth(s));
}
BENCHMARK(BM_GrowthChain)->RangeMultiplier(2)->Range(2, 32);

}  // namespace
BENCHMARK_MAIN();
