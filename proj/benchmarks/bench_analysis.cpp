#include <benchmark/benchmark.h>

#include "dioph/meansquare.hpp"
#include "dioph/optimizer.hpp"
#include "dioph/rational.hpp"
#include "dioph/search.hpp"

namespace {

const dioph::PrimeTable& table() {
  static const auto t = dioph::PrimeTable::build(2'100'000);
  return t;
}

void BM_MeanSquareRange(benchmark::State& state) {
  const double X = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dioph::mean_square_range(table(), X, 2 * X, 1.0, {false, 100.0},
                                                      dioph::Bracket::theta));
  }
}
BENCHMARK(BM_MeanSquareRange)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_FindSolutions(benchmark::State& state) {
  dioph::ProblemInstance inst;
  inst.lambda1 = 1.0;
  inst.lambda2 = -1.4142135623730951;
  inst.lambda3 = -1.0;
  inst.k = 1.05;
  const double X = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dioph::find_solutions(inst, table(), X, 0.1).count);
  }
}
BENCHMARK(BM_FindSolutions)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_ContinuedFraction(benchmark::State& state) {
  const auto x = dioph::HiReal::parse("sqrt(2)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(dioph::continued_fraction(x, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_ContinuedFraction)->Arg(20)->Arg(200);

void BM_OptimizerSolve(benchmark::State& state) {
  const dioph::BigRational k(11, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dioph::optimizer::solve(k).c);
  }
}
BENCHMARK(BM_OptimizerSolve);

}  // namespace
