#include "mfd/markov.hpp"
#include "mfd/perron.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

// Fully supported n×n inclusion matrix with multiplicities 1..3.
mfd::Matrix dense(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  mfd::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = mfd::Scalar(1 + static_cast<long long>(rng() % 3));
  return m;
}

void BM_PerronData(benchmark::State& state) {
  const auto inc = mfd::validate_inclusion(dense(static_cast<std::size_t>(state.range(0)), 7));
  for (auto _ : state) benchmark::DoNotOptimize(mfd::perron_data(inc));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PerronData)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_MarkovTraceStandard(benchmark::State& state) {
  const auto inc = mfd::validate_inclusion(dense(static_cast<std::size_t>(state.range(0)), 11));
  const auto delta = mfd::restrict_to_support(mfd::standard_distortion(mfd::perron_data(inc)), inc.dims());
  for (auto _ : state) benchmark::DoNotOptimize(mfd::markov_trace(inc, delta));
}
BENCHMARK(BM_MarkovTraceStandard)->RangeMultiplier(2)->Range(2, 32);

void BM_FiniteDimMarkovA4(benchmark::State& state) {
  const mfd::Matrix lambda{{1, 0}, {1, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(mfd::finite_dim_distortion(lambda));
}
BENCHMARK(BM_FiniteDimMarkovA4);

}  // namespace
