// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <benchmark/benchmark.h>

#include "motskit/catalog.hpp"
#include "motskit/curvature.hpp"
#include "motskit/initial_data.hpp"

using namespace motskit;

static void BM_CurvatureDual(benchmark::State& state) {
  CatalogEntry ads = make_ads_schwarzschild(static_cast<int>(state.range(0)), 0.5);
  ChartPoint p = catalog_sample_points(ads, 1, 0).front();
  for (auto _ : state) {
    CurvatureBundle b = curvature(ads.metric, p);
    benchmark::DoNotOptimize(b.scalar);
  }
}
BENCHMARK(BM_CurvatureDual)->Arg(3)->Arg(4);

static void BM_CurvatureFdOracle(benchmark::State& state) {
  CatalogEntry ads = make_ads_schwarzschild(static_cast<int>(state.range(0)), 0.5);
  ChartPoint p = catalog_sample_points(ads, 1, 0).front();
  for (auto _ : state) {
    CurvatureBundle b = fd_curvature_oracle(ads.metric, p, 1e-3);
    benchmark::DoNotOptimize(b.scalar);
  }
}
BENCHMARK(BM_CurvatureFdOracle)->Arg(3)->Arg(4);

static void BM_Constraints(benchmark::State& state) {
  CatalogEntry kot = make_toroidal_kottler(3, 0.5);
  InitialDataSet ids = make_umbilic_data(kot.metric, -1.0);
  ChartPoint p = catalog_sample_points(kot, 1, 0).front();
  for (auto _ : state) {
    ConstraintValues c = constraints(ids, p);
    benchmark::DoNotOptimize(c.mu);
  }
}
BENCHMARK(BM_Constraints);

BENCHMARK_MAIN();
