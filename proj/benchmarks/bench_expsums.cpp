#include <benchmark/benchmark.h>

#include <array>

#include "dioph/expsums.hpp"

namespace {

const dioph::PrimeTable& table() {
  static const auto t = dioph::PrimeTable::build(4'000'000);
  return t;
}

void BM_PhaseSumPoint(benchmark::State& state) {
  const dioph::WindowSpec w{static_cast<double>(state.range(0)), 1.05, 0.1};
  const auto s = dioph::prime_power_sum(table(), dioph::dyadic_window(w));
  double alpha = 0.123;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s(alpha));
    alpha += 1e-7;
  }
  state.counters["terms"] = static_cast<double>(s.size());
}
BENCHMARK(BM_PhaseSumPoint)->Arg(10'000)->Arg(1'000'000);

void BM_EvalKronrod(benchmark::State& state) {
  const dioph::WindowSpec w{1e5, 2.0, 0.1};
  const auto s = dioph::prime_power_sum(table(), dioph::dyadic_window(w));
  const double half = 1e-6;
  const auto cache = s.make_cache(half);
  std::array<dioph::Complex, dioph::quad::KronrodRule::kSize> out;
  double c = 0.01;
  for (auto _ : state) {
    s.eval_kronrod(c, half, state.range(0) ? &cache : nullptr, out);
    benchmark::DoNotOptimize(out);
    c += 2 * half;
  }
}
BENCHMARK(BM_EvalKronrod)->Arg(0)->Arg(1);

void BM_PowerPhaseIntegral(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) * 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dioph::power_phase_integral(1e5, 1e6, 1.05, alpha, 1e-8));
  }
}
BENCHMARK(BM_PowerPhaseIntegral)->Arg(1)->Arg(100)->Arg(1'000);

}  // namespace
