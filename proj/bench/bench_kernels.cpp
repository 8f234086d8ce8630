// Serial reference kernels against their OpenMP counterparts.
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "kahler/kernels.hpp"

namespace {

namespace k = kahler::kernels;

std::vector<double> samples(std::size_t m) {
  std::vector<double> f(m);
  const double dx = 1.0 / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    f[i] = 0.2 * x - 0.1 * x * x + 0.05 * std::sin(3.0 * x);
  }
  return f;
}

template <auto Kernel>
void derivative(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0)) + 1;
  const std::vector<double> f = samples(m);
  std::vector<double> out(m);
  for (auto _ : state) {
    Kernel(f, 1.0 / static_cast<double>(m - 1), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(m));
}

template <auto Kernel>
void quadrature(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0)) + 1;
  const std::vector<double> f = samples(m);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f, 1.0 / static_cast<double>(m - 1)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(m));
}

template <auto Kernel>
void density(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0)) + 1;
  const std::vector<double> f = samples(m);
  std::vector<double> out(m);
  std::vector<double> scratch(2 * m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(f, 2, 1.0 / static_cast<double>(m - 1), out, scratch));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(m));
}

}  // namespace

BENCHMARK(derivative<k::serial::first_derivative>)->RangeMultiplier(4)->Range(1024, 65536);
BENCHMARK(derivative<k::parallel::first_derivative>)->RangeMultiplier(4)->Range(1024, 65536);
BENCHMARK(quadrature<k::serial::simpson>)->RangeMultiplier(4)->Range(1024, 65536);
BENCHMARK(quadrature<k::parallel::simpson>)->RangeMultiplier(4)->Range(1024, 65536);
BENCHMARK(density<k::serial::log_density_ratio>)->RangeMultiplier(4)->Range(1024, 65536);
BENCHMARK(density<k::parallel::log_density_ratio>)->RangeMultiplier(4)->Range(1024, 65536);

BENCHMARK_MAIN();
