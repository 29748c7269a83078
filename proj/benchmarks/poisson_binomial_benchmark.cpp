#include <benchmark/benchmark.h>

#include "fmeasure/poisson_binomial.hpp"
#include "fmeasure/random.hpp"

namespace {

using namespace fmeasure;

ProbVector probs(std::size_t n) {
  Rng rng(1);
  ProbVector p(n);
  for (auto& v : p) v = rng.uniform();
  return p;
}

void BM_PbCoefficients(benchmark::State& state) {
  const ProbVector p = probs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pb_coefficients(p));
  }
}
BENCHMARK(BM_PbCoefficients)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_PbPrefixTable(benchmark::State& state) {
  const ProbVector p = probs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pb_prefix_table(p));
  }
}
BENCHMARK(BM_PbPrefixTable)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

// Full peel-off: deflation cost of walking a product back down to 1.
void BM_PbDeflateSweep(benchmark::State& state) {
  const ProbVector p = probs(static_cast<std::size_t>(state.range(0)));
  const PBCoefficients full = pb_coefficients(p);
  for (auto _ : state) {
    PBCoefficients c = full;
    for (std::size_t k = p.size(); k > 1; --k) {
      c = pb_deflate(c, p[k - 1]).c;
    }
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_PbDeflateSweep)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

}  // namespace
