#include "mfd/loopbasis.hpp"

#include <benchmark/benchmark.h>

namespace {

// A_n-type chain with dimension vector (1, 2, ..., k).
mfd::LoopAlgebraPair chain(std::size_t k) {
  mfd::Matrix lambda(k, k);
  mfd::Vector m0(k);
  for (std::size_t i = 0; i < k; ++i) {
    lambda(i, i) = mfd::Scalar(1);
    if (i > 0) lambda(i, i - 1) = mfd::Scalar(1);
    m0[i] = mfd::Scalar(static_cast<long long>(i + 1));
  }
  return mfd::build_loop_algebra(m0, lambda);
}

void BM_BuildLoopAlgebra(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(chain(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BuildLoopAlgebra)->DenseRange(2, 5);

void BM_PimsnerPopaVerify(benchmark::State& state) {
  const auto pair = chain(static_cast<std::size_t>(state.range(0)));
  const auto basis = mfd::pimsner_popa_basis(pair).all();
  for (auto _ : state) benchmark::DoNotOptimize(mfd::verify_pp_identity(pair, basis));
  state.counters["basis"] = static_cast<double>(basis.size());
  state.counters["loops"] = static_cast<double>(pair.n1_loops.size());
}
BENCHMARK(BM_PimsnerPopaVerify)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_DensitySequence(benchmark::State& state) {
  const auto pair = chain(2);
  const auto basis = mfd::pimsner_popa_basis(pair).all();
  for (auto _ : state)
    benchmark::DoNotOptimize(mfd::density_sequence(pair, basis, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_DensitySequence)->Arg(10)->Arg(20)->Arg(40);

}  // namespace
