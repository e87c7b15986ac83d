#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "lrc/central.hpp"
#include "lrc/matching.hpp"
#include "lrc/runner.hpp"
#include "lrc/sieve.hpp"

using namespace lrc;

static void BM_SieveBuild(benchmark::State& state) {
  const std::int64_t limit = state.range(0);
  for (auto _ : state) {
    auto sieve = build_sieve(limit);
    benchmark::DoNotOptimize(sieve.spf(limit));
  }
}
BENCHMARK(BM_SieveBuild)->Arg(100'000)->Arg(1'000'000)->Arg(10'000'000);

static void BM_CoprimeMatching(benchmark::State& state) {
  const std::int64_t len = state.range(0);
  const ArithProg A(1, 1, len), B(len + 1, 1, len);
  for (auto _ : state) {
    auto out = find_coprime_mapping(A, B);
    benchmark::DoNotOptimize(out.perfect);
  }
}
BENCHMARK(BM_CoprimeMatching)->Arg(64)->Arg(256)->Arg(1024);

static void BM_ComputeF(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    auto result = compute_f(n);
    benchmark::DoNotOptimize(result.f_value);
  }
}
BENCHMARK(BM_ComputeF)->Arg(16)->Arg(24)->Arg(32);

static void BM_ClassifyCanonical(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::vector<std::int64_t> speeds(static_cast<std::size_t>(n));
  std::iota(speeds.begin(), speeds.end(), 1);
  const auto V = SpeedSet::from(speeds);
  for (auto _ : state) {
    auto cls = classify_instance(V);
    benchmark::DoNotOptimize(cls.tag);
  }
}
BENCHMARK(BM_ClassifyCanonical)->Arg(8)->Arg(12)->Arg(16);

static void BM_CentralScan(benchmark::State& state) {
  const std::int64_t m = state.range(0);
  for (auto _ : state) {
    auto violations = exhaustive_central_scan(20, m);
    benchmark::DoNotOptimize(violations.size());
  }
}
BENCHMARK(BM_CentralScan)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
