// Serial reference vs OpenMP sample loops on the sizes used by the bound pipeline.

#include <benchmark/benchmark.h>

#include <random>

#include "wcert/kernels.hpp"

namespace {

using namespace wcert;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = u(rng);
  return m;
}

template <bool Parallel>
void BM_NearestCenter(benchmark::State& state) {
  const Matrix points = random_matrix(static_cast<std::size_t>(state.range(0)), 2, 1);
  const Matrix centers = random_matrix(static_cast<std::size_t>(state.range(1)), 2, 2);
  for (auto _ : state) {
    auto a = Parallel ? kernels::omp::nearest_center(points, centers, NormOrder::l2)
                      : kernels::serial::nearest_center(points, centers, NormOrder::l2);
    benchmark::DoNotOptimize(a.label.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_RegionLabels(benchmark::State& state) {
  const Matrix points = random_matrix(static_cast<std::size_t>(state.range(0)), 2, 3);
  const Matrix centers = random_matrix(static_cast<std::size_t>(state.range(1)), 2, 4);
  const std::vector<double> radii(centers.rows(), 0.1);
  for (auto _ : state) {
    auto labels = Parallel ? kernels::omp::region_labels(points, centers, radii, NormOrder::l2)
                           : kernels::serial::region_labels(points, centers, radii, NormOrder::l2);
    benchmark::DoNotOptimize(labels.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {1000L, 10000L, 100000L})
    for (long k : {20L, 100L}) b->Args({n, k});
}

}  // namespace

BENCHMARK(BM_NearestCenter<false>)->Apply(sizes)->Name("nearest_center/serial");
BENCHMARK(BM_NearestCenter<true>)->Apply(sizes)->Name("nearest_center/omp");
BENCHMARK(BM_RegionLabels<false>)->Apply(sizes)->Name("region_labels/serial");
BENCHMARK(BM_RegionLabels<true>)->Apply(sizes)->Name("region_labels/omp");

BENCHMARK_MAIN();
