// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "hypercheck/catalog.hpp"
#include "hypercheck/quadrature.hpp"
#include "hypercheck/verifier.hpp"

using namespace hypercheck;

static void BM_JetMultiply(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Jet a = Jet::variable(0, 0.7, dim, 4);
  for (int i = 1; i < dim; ++i) a = a * Jet::variable(i, 0.3 + 0.1 * i, dim, 4);
  Jet b = sin(a) + a;
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_JetMultiply)->Arg(2)->Arg(3)->Arg(5);

static void BM_FrameAt(benchmark::State& state) {
  auto chart = instantiate(state.range(0) == 2
                               ? ModelSpec::torus(2.0, 1.0)
                               : ModelSpec::sphere(1.0, 3, 0.8));
  const Eigen::VectorXd u = chart.point_at_fraction(0.37);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frame_at(chart, u, 4));
  }
}
BENCHMARK(BM_FrameAt)->Arg(2)->Arg(3);

static void BM_PointwiseCheck(benchmark::State& state) {
  auto chart = instantiate(ModelSpec::ellipsoid({2.0, 1.0, 1.0}));
  const Eigen::VectorXd u = chart.point_at_fraction(0.41);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pointwise_check(chart, u, "div_phi"));
  }
}
BENCHMARK(BM_PointwiseCheck);

static void BM_ChartVolume(benchmark::State& state) {
  auto chart = instantiate(ModelSpec::torus(2.0, 1.0));
  IntegralOptions opt;
  opt.points_per_axis = static_cast<int>(state.range(0));
  opt.error_estimate = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chart_volume(chart, opt));
  }
}
BENCHMARK(BM_ChartVolume)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
