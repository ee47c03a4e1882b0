#include <benchmark/benchmark.h>

#include "bineg/bineg.hpp"

namespace {

using namespace bineg;

Matrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = gaussian_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

void BM_JacobiEig4(benchmark::State& state) {
  const Matrix a = random_hermitian(4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eig(a));
}
BENCHMARK(BM_JacobiEig4);

void BM_JacobiEig16(benchmark::State& state) {
  const Matrix a = random_hermitian(16, 2);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eig(a));
}
BENCHMARK(BM_JacobiEig16);

void BM_TridiagonalEig16(benchmark::State& state) {
  const Matrix a = random_hermitian(16, 2);
  for (auto _ : state) benchmark::DoNotOptimize(tridiagonal_eig(a));
}
BENCHMARK(BM_TridiagonalEig16);

void BM_Concurrence(benchmark::State& state) {
  const DensityMatrix rho = random_mixed(2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_Binegativity(benchmark::State& state) {
  const DensityMatrix rho = random_mixed(2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(binegativity(rho));
}
BENCHMARK(BM_Binegativity);

void BM_MeasureTriple(benchmark::State& state) {
  const DensityMatrix rho = random_mixed(3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(measure_triple(rho));
}
BENCHMARK(BM_MeasureTriple);

void BM_RandomMixedState(benchmark::State& state) {
  Rng rng(6);
  for (auto _ : state) benchmark::DoNotOptimize(random_mixed(2, rng));
}
BENCHMARK(BM_RandomMixedState);

void BM_RandomPptChannel(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng(7, i++);
    benchmark::DoNotOptimize(random_ppt_channel(rng));
  }
}
BENCHMARK(BM_RandomPptChannel)->Unit(benchmark::kMillisecond);

void BM_OrderingSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_ordering(static_cast<std::uint64_t>(state.range(0)), 2));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrderingSweep)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
