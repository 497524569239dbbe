#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "frmpe/exact_diag.hpp"
#include "frmpe/kernels.hpp"
#include "frmpe/optimizer.hpp"
#include "frmpe/quadrature.hpp"

namespace {

using namespace frmpe;

std::vector<Polaron> random_polarons(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xi(0.05, 5.0), zeta(-2.0, 2.0);
  std::vector<Polaron> p;
  for (int i = 0; i < n; ++i) p.push_back({xi(rng), zeta(rng)});
  return p;
}

void BM_BuildKernels(benchmark::State& state) {
  const auto p = random_polarons(static_cast<int>(state.range(0)), 1);
  const ModelParams m = model_at_ratio(0.01, 1.0, 1.05);
  for (auto _ : state) benchmark::DoNotOptimize(build_kernels(p, m));
}
BENCHMARK(BM_BuildKernels)->Arg(2)->Arg(4)->Arg(6);

void BM_SolveLinearCoeffs(benchmark::State& state) {
  // Spread the centers so the Gram matrix stays well conditioned.
  std::vector<Polaron> p;
  for (int i = 0; i < state.range(0); ++i) p.push_back({0.8 + 0.1 * i, -1.0 + 0.4 * i});
  const ModelParams m = model_at_ratio(0.01, 1.0, 1.05);
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear_coeffs(p, m));
}
BENCHMARK(BM_SolveLinearCoeffs)->Arg(2)->Arg(4)->Arg(6);

void BM_QuadElement(benchmark::State& state) {
  const auto p = random_polarons(2, 3);
  const ModelParams m = model_at_ratio(0.01, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(quad_element(ElementKind::HPlus, p[0], p[1], m));
}
BENCHMARK(BM_QuadElement);

void BM_EDFixedCutoff(benchmark::State& state) {
  const ModelParams m = model_at_ratio(0.01, 1.0, 1.05);
  const int cutoff = static_cast<int>(state.range(0));
  const bool odd = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_fixed_cutoff(m, cutoff, odd));
}
BENCHMARK(BM_EDFixedCutoff)->Args({64, 1})->Args({64, 0})->Args({256, 1})->Unit(benchmark::kMillisecond);

void BM_OptimizeTwoPolarons(benchmark::State& state) {
  const ModelParams m = model_at_ratio(0.01, 1.0, 1.05);
  OptimizeSpec spec;
  spec.n_polarons = 2;
  spec.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(optimize(m, spec));
}
BENCHMARK(BM_OptimizeTwoPolarons)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
