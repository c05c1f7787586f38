// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <benchmark/benchmark.h>

#include "motskit/catalog.hpp"
#include "motskit/stability.hpp"

using namespace motskit;

static void BM_AssembleStabilityOperator(benchmark::State& state) {
  CatalogEntry warped = make_warped_product(2, 1.0, 2.0);
  InitialDataSet ids = make_umbilic_data(warped.metric, -1.0);
  EmbeddedSurface base = warped.boundary_surface(static_cast<int>(state.range(0)));
  StabilityOptions opt;
  opt.grid_points = static_cast<int>(state.range(0));
  for (auto _ : state) {
    StabilityAssembly a = assemble_stability_operator(base, ids, opt);
    benchmark::DoNotOptimize(a.op.data());
  }
}
BENCHMARK(BM_AssembleStabilityOperator)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_PrincipalEigenvalue(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FiberGrid grid = FiberGrid::torus(2, n);
  Eigen::VectorXd pot(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd u = grid.node(i);
    pot[static_cast<Eigen::Index>(i)] = 0.3 * std::sin(u[0]) * std::cos(u[1]);
  }
  StabilityAssembly a = assemble_from_coefficients(grid, Eigen::MatrixXd::Identity(2, 2),
                                                   pot, Eigen::MatrixXd());
  for (auto _ : state) {
    PrincipalEig eig = principal_eigenvalue(a);
    benchmark::DoNotOptimize(eig.lambda1);
  }
}
BENCHMARK(BM_PrincipalEigenvalue)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);
