// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <benchmark/benchmark.h>

#include "motskit/catalog.hpp"
#include "motskit/foliation.hpp"

using namespace motskit;

static void BM_BuildNormalFoliation(benchmark::State& state) {
  CatalogEntry warped = make_warped_product(2, 1.0, 2.0);
  EmbeddedSurface base = warped.boundary_surface(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    NormalFoliation f = build_normal_foliation(warped.metric, base, 1.0, 9);
    benchmark::DoNotOptimize(f.psi.data());
  }
}
BENCHMARK(BM_BuildNormalFoliation)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_VerifySplitting(benchmark::State& state) {
  CatalogEntry warped = make_warped_product(2, 1.0, 2.0);
  InitialDataSet ids = make_umbilic_data(warped.metric, -1.0);
  NormalFoliation f =
      build_normal_foliation(warped.metric, warped.boundary_surface(8), 1.0, 9);
  for (auto _ : state) {
    SplitReport rep = verify_splitting(f, ids, 1.0);
    benchmark::DoNotOptimize(rep.max_warp_dev);
  }
}
BENCHMARK(BM_VerifySplitting)->Unit(benchmark::kMillisecond);
