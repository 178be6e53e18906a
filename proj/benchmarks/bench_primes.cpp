#include <benchmark/benchmark.h>

#include "dioph/primes.hpp"

namespace {

void BM_SieveBuild(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto t = dioph::PrimeTable::build(limit);
    benchmark::DoNotOptimize(t.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SieveBuild)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_IsPrime(benchmark::State& state) {
  std::uint64_t n = 1'000'000'000'000'000'003ULL;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dioph::is_prime(n));
    n += 2;
  }
}
BENCHMARK(BM_IsPrime);

void BM_Theta(benchmark::State& state) {
  const auto t = dioph::PrimeTable::build(1'000'000);
  double x = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.theta(x));
    x = x > 700'000.0 ? 2.0 : x * 1.37;
  }
}
BENCHMARK(BM_Theta);

}  // namespace
