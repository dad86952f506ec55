#include "mfd/morita.hpp"
#include "mfd/tower.hpp"

#include <benchmark/benchmark.h>

namespace {

const mfd::InclusionData& a4() {
  static const auto inc = mfd::validate_inclusion(mfd::Matrix{{1, 0}, {1, 1}});
  return inc;
}

// Exact tower: rational sizes grow with the level, so cost is superlinear.
void BM_ExactTowerA4(benchmark::State& state) {
  const mfd::Matrix start{{2, 1}, {2, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(mfd::jones_tower(start, a4(), static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ExactTowerA4)->DenseRange(5, 30, 5);

void BM_FixedPointFloat(benchmark::State& state) {
  const mfd::Matrix start{{7.5, 0.3}, {2.5, 0.1}};
  for (auto _ : state) benchmark::DoNotOptimize(mfd::iterate_to_fixed_point(start, a4()));
}
BENCHMARK(BM_FixedPointFloat);

void BM_DownwardUnique(benchmark::State& state) {
  const mfd::PartialMatrix level{{mfd::Scalar::ratio(5, 2), std::nullopt}, {mfd::Scalar::ratio(5, 3), 1}};
  for (auto _ : state)
    benchmark::DoNotOptimize(mfd::downward_feasibility(a4(), level, mfd::FeasibilityMode::kStrict));
}
BENCHMARK(BM_DownwardUnique);

void BM_DownwardSimplex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  mfd::Matrix d(1, n, mfd::Scalar(1));
  const auto inc = mfd::validate_inclusion(d);
  const mfd::PartialMatrix delta(mfd::Matrix(1, n, mfd::Scalar(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(mfd::downward_feasibility(inc, delta, mfd::FeasibilityMode::kStrict));
}
BENCHMARK(BM_DownwardSimplex)->RangeMultiplier(2)->Range(2, 16);

void BM_RescaleToStandard(benchmark::State& state) {
  const auto p = mfd::perron_data(a4());
  const mfd::Matrix delta{{2, 1}, {2, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(mfd::rescale_to_standard(delta, a4(), p));
}
BENCHMARK(BM_RescaleToStandard);

}  // namespace
