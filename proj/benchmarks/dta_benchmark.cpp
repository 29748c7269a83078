#include <benchmark/benchmark.h>

#include <algorithm>

#include "fmeasure/dta.hpp"
#include "fmeasure/random.hpp"

namespace {

using namespace fmeasure;

ProbVector sorted_probs(std::size_t n) {
  Rng rng(42);
  ProbVector p(n);
  for (auto& v : p) v = rng.uniform();
  std::sort(p.rbegin(), p.rend());
  return p;
}

void BM_ExpectedFTableQuadratic(benchmark::State& state) {
  const ProbVector p = sorted_probs(static_cast<std::size_t>(state.range(0)));
  const RationalBetaSq unit = RationalBetaSq::make(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        expected_f_table_quadratic(p, unit, EmptyConvention::OneOnEmpty));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExpectedFTableQuadratic)
    ->Arg(1000)
    ->Arg(5000)
    ->Arg(20000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNSquared);

void BM_ExpectedFTableQuadraticBetaTwo(benchmark::State& state) {
  const ProbVector p = sorted_probs(static_cast<std::size_t>(state.range(0)));
  const RationalBetaSq four = RationalBetaSq::make(4, 1);  // beta = 2
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        expected_f_table_quadratic(p, four, EmptyConvention::OneOnEmpty));
  }
}
BENCHMARK(BM_ExpectedFTableQuadraticBetaTwo)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_ExpectedFTableCubic(benchmark::State& state) {
  const ProbVector p = sorted_probs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        expected_f_table_cubic(p, Beta(1.0), EmptyConvention::OneOnEmpty));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExpectedFTableCubic)
    ->Arg(100)
    ->Arg(200)
    ->Arg(400)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNCubed);

void BM_OptimalPrediction(benchmark::State& state) {
  Rng rng(7);
  ProbVector p(static_cast<std::size_t>(state.range(0)));
  for (auto& v : p) v = rng.uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        optimal_prediction(p, Beta(1.0), EmptyConvention::OneOnEmpty));
  }
}
BENCHMARK(BM_OptimalPrediction)->Arg(3000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace
