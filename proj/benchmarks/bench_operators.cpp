#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fraclame/grid.hpp"
#include "fraclame/nonlocal.hpp"
#include "fraclame/random_fields.hpp"
#include "fraclame/spectral.hpp"

namespace {

using namespace fraclame;

GridSpec grid_1d(int n) {
  GridSpec g;
  g.dim = 1;
  g.points_per_dim = n;
  return g;
}

std::vector<double> smooth_profile(const GridSpec& g) {
  std::vector<double> a(g.nodes());
  double x[2];
  for (int i = 0; i < g.nodes(); ++i) {
    g.node_coords(i, x);
    a[i] = 2.0 + 0.5 * std::sin(2.0 * kPi * x[0] / g.box_length);
  }
  return a;
}

void BM_DenseApply(benchmark::State& state) {
  const GridSpec g = grid_1d(static_cast<int>(state.range(0)));
  CoefficientClass cls;
  const Coefficient a = Coefficient::separable(g, smooth_profile(g), cls);
  const VectorField u = random_band_limited(g, 8, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_operator(a, 0.5, u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseApply)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_SeparableFastApply(benchmark::State& state) {
  const GridSpec g = grid_1d(static_cast<int>(state.range(0)));
  const std::vector<double> a = smooth_profile(g);
  const VectorField u = random_band_limited(g, 8, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(separable_fast_apply(a, 0.5, u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeparableFastApply)
    ->RangeMultiplier(2)
    ->Range(256, 4096)
    ->Complexity();

void BM_ForwardTransform(benchmark::State& state) {
  const GridSpec g = grid_1d(static_cast<int>(state.range(0)));
  const VectorField u = random_band_limited(g, 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(u));
}
BENCHMARK(BM_ForwardTransform)->RangeMultiplier(4)->Range(256, 16384);

void BM_VectorFracLaplacian2D(benchmark::State& state) {
  GridSpec g;
  g.dim = 2;
  g.points_per_dim = static_cast<int>(state.range(0));
  const VectorField u = random_band_limited(g, 8, 1);
  LameSymbolConstants consts;
  consts.ell1 = 1.0;
  consts.ell2 = 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(vector_frac_laplacian(u, 0.5, consts));
}
BENCHMARK(BM_VectorFracLaplacian2D)->RangeMultiplier(2)->Range(32, 128);

void BM_BilinearForm(benchmark::State& state) {
  const GridSpec g = grid_1d(static_cast<int>(state.range(0)));
  CoefficientClass cls;
  const Coefficient one = Coefficient::constant(1.0, cls);
  const VectorField u = random_band_limited(g, 8, 1);
  const VectorField v = random_band_limited(g, 8, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(bilinear_form(one, 0.5, u, v));
}
BENCHMARK(BM_BilinearForm)->RangeMultiplier(2)->Range(256, 2048);

}  // namespace

BENCHMARK_MAIN();
