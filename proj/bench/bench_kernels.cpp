// Serial vs parallel exact kernels on random dense rational matrices.
#include <benchmark/benchmark.h>

#include "dgw/instances.hpp"
#include "dgw/linalg.hpp"

using namespace dgw;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  gen::Rng rng(seed);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = gen::small(rng, 5);
  return m;
}

void BM_rref_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n + n / 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::rref_serial(a));
}

void BM_rref_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n + n / 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::rref_parallel(a));
}

void BM_multiply_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 2), b = random_matrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_serial(a, b));
}

void BM_multiply_parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 2), b = random_matrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply_parallel(a, b));
}

}  // namespace

BENCHMARK(BM_rref_serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_parallel)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_serial)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_parallel)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
