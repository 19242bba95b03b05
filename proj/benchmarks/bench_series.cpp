#include <benchmark/benchmark.h>

#include <random>

#include "bracelet/qseries.hpp"

namespace {

using namespace bracelet;

TruncatedSeries dense_random(CoefficientRing ring, std::size_t order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> value(-1000, 1000);
  std::vector<std::int64_t> c(order + 1);
  for (auto& v : c) v = value(rng);
  return TruncatedSeries::from_integers(ring, c);
}

void run_multiply(benchmark::State& state, CoefficientRing ring) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = dense_random(ring, n, 1), y = dense_random(ring, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(x, y));
  state.SetComplexityN(state.range(0));
}

void BM_MultiplyExact(benchmark::State& state) { run_multiply(state, CoefficientRing::exact()); }
void BM_MultiplyMod5(benchmark::State& state) { run_multiply(state, CoefficientRing::mod(5)); }
void BM_MultiplyMod2(benchmark::State& state) { run_multiply(state, CoefficientRing::mod(2)); }

BENCHMARK(BM_MultiplyExact)->RangeMultiplier(2)->Range(128, 1024)->Complexity();
BENCHMARK(BM_MultiplyMod5)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_MultiplyMod2)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_PartitionExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen_partition(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PartitionExact)->Arg(1000)->Arg(2000);

void BM_BraceletMod2(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_bracelet(5, static_cast<std::size_t>(state.range(0)), CoefficientRing::mod(2)));
  }
}
BENCHMARK(BM_BraceletMod2)->Arg(5'008)->Arg(30'572);

void BM_BraceletMod5(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_bracelet(state.range(0), 25'052, CoefficientRing::mod(5)));
  }
}
BENCHMARK(BM_BraceletMod5)->Arg(25)->Arg(125)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
