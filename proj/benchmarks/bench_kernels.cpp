#include <benchmark/benchmark.h>

#include <random>

#include "kgz/checks/oracles.hpp"
#include "kgz/harness/presets.hpp"
#include "kgz/kgz_scheme.hpp"
#include "kgz/sine_transform.hpp"
#include "kgz/tridiagonal.hpp"

namespace {

using namespace kgz;

void BM_Step(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(1));
  const auto [a, b] = harness::domain_for_eps(eps);
  KgzParams p;
  p.eps = eps;
  p.alpha = 0.0;
  p.beta = -1.0;
  p.grid = Grid1D(a, b, static_cast<std::size_t>(state.range(0)));
  p.tau = 1e-3;
  p.T = 1.0;
  const SampledData d = sample(harness::preset_initial_data("gauss_sech"), p.grid);
  const InitialLayerData layer = prepare_layer(p, d);
  KgzState s = init_first_steps(p, d, layer);
  for (auto _ : state) {
    s = step(s, p, layer);
    if (s.k >= p.steps()) s = init_first_steps(p, d, layer);
    benchmark::DoNotOptimize(s.E_curr.values().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Args({620, 1})->Args({6200, 1})->Args({1840, 16})->Unit(benchmark::kMicrosecond);

void BM_SineTransformFast(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Grid1D g(0.0, 1.0, m);
  std::mt19937_64 rng(1);
  const GridFn u = oracle::random_grid_fn(g, rng);
  const SineTransform t(m);
  for (auto _ : state) benchmark::DoNotOptimize(t.forward(u).coeffs.data());
}
BENCHMARK(BM_SineTransformFast)->RangeMultiplier(4)->Range(64, 16384);

void BM_SineTransformNaive(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Grid1D g(0.0, 1.0, m);
  std::mt19937_64 rng(1);
  const GridFn u = oracle::random_grid_fn(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dst_forward(u, g).coeffs.data());
}
BENCHMARK(BM_SineTransformNaive)->RangeMultiplier(4)->Range(64, 1024);

void BM_Tridiagonal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> off(n, -1.0), diag(n, 4.0);
  std::vector<double> rhs(n);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (double& r : rhs) r = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_tridiagonal(off, diag, off, rhs).data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Tridiagonal)->RangeMultiplier(8)->Range(64, 32768);

}  // namespace

BENCHMARK_MAIN();
