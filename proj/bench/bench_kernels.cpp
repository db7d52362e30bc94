#include "qrecon/kernels.hpp"
#include "qrecon/random.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace qrecon;

namespace {

Matrix sample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_gaussian(n, n, rng);
}

template <auto Kernel>
void bm_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = sample(n, 1), b = sample(n, 2);
  Matrix out(n, n);
  for (auto _ : state) {
    Kernel(a, b, out);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}

template <auto Kernel>
void bm_kron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = sample(n, 3), b = sample(n, 4);
  Matrix out(n * n, n * n);
  for (auto _ : state) {
    Kernel(a, b, out);
    benchmark::DoNotOptimize(out.data().data());
  }
}

template <auto Kernel>
void bm_partial_trace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = sample(n * n, 5);
  Matrix out(n, n);
  for (auto _ : state) {
    Kernel(m, false, n, n, out);
    benchmark::DoNotOptimize(out.data().data());
  }
}

}  // namespace

BENCHMARK(bm_matmul<kernels::serial::matmul>)->Name("matmul/serial")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(bm_matmul<kernels::omp::matmul>)->Name("matmul/omp")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(bm_kron<kernels::serial::kron>)->Name("kron/serial")->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(bm_kron<kernels::omp::kron>)->Name("kron/omp")->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(bm_partial_trace<kernels::serial::partial_trace>)->Name("partial_trace/serial")->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(bm_partial_trace<kernels::omp::partial_trace>)->Name("partial_trace/omp")->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
