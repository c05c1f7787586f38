// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include "motskit/foliation.hpp"
#include "support/test_helpers.hpp"

using namespace motskit;
using namespace motskit::testing;

namespace {

NormalChoice increasing_t(int n) {
  return NormalChoice::user_vector([n](const ChartPoint&) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[0] = 1.0;
    return v;
  });
}

/// dt^2 + a(t)^2 (dx^2 + dy^2) with a generic-scalar warp.
template <class WarpFn>
MetricField custom_war_metric(WarpFn a, double t_lo, double t_hi, std::string name) {
  return MetricField(
      3,
      [a](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        S w = a(x[0]);
        SymMat<S> g(3);
        g(0, 0) = S(1.0);
        g(1, 1) = w * w;
        g(2, 2) = w * w;
        return g;
      },
      [t_lo, t_hi](const ChartPoint& p) {
        return p.coords[0] > t_lo && p.coords[0] < t_hi;
      },
      std::move(name));
}

}  // namespace

TEST_CASE("warped-product foliation reproduces h(t) = e^{2t} h(0)") {
  CatalogEntry warped = make_warped_product(2, 1.0, 2.0);
  EmbeddedSurface base = warped.boundary_surface(8);
  NormalFoliation f = build_normal_foliation(warped.metric, base, 1.0, 9);

  for (int j = 0; j < f.slices(); ++j) {
    const double scale = std::exp(2.0 * f.t_grid[static_cast<std::size_t>(j)]);
    for (std::size_t node = 0; node < f.grid.size(); node += 13) {
      SurfacePointGeometry geom = slice_node_geometry(f, j, node);
      CHECK(sup_abs(geom.induced - scale * Eigen::MatrixXd::Identity(2, 2)) < 1e-8);
    }
  }
  GaugeDeviation gd = gauge_deviation(f);
  CHECK(gd.unit_speed < 1e-8);
  CHECK(gd.orthogonality < 1e-8);
  CHECK(sup_abs(f.psi - Eigen::MatrixXd::Ones(f.psi.rows(), f.psi.cols())) < 1e-10);
}

TEST_CASE("flat product foliation is static") {
  MetricField flat = euclidean_metric(3);
  ImmersionField torus_at_zero(2, 3, [](auto u) {
    using S = std::remove_cvref_t<decltype(u[0])>;
    std::array<S, kMaxDim> x{};
    x[0] = S(0.0);
    x[1] = u[0];
    x[2] = u[1];
    return x;
  });
  EmbeddedSurface base(flat, std::move(torus_at_zero), increasing_t(3),
                       FiberTopology::Torus, FiberGrid::torus(2, 8));
  NormalFoliation f = build_normal_foliation(flat, base, 1.0, 9);
  for (int j = 0; j < f.slices(); ++j)
    for (std::size_t node = 0; node < f.grid.size(); node += 13) {
      SurfacePointGeometry geom = slice_node_geometry(f, j, node);
      CHECK(sup_abs(geom.induced - Eigen::MatrixXd::Identity(2, 2)) < 1e-10);
      CHECK(sup_abs(geom.second_fund) < 1e-10);
    }

  InitialDataSet tsym = make_umbilic_data(flat, 0.0);
  Eigen::MatrixXd theta = theta_profile(f, tsym);
  CHECK(sup_abs(theta) < 1e-9);
  CHECK(evolution_consistency(f, tsym).max_deviation < 1e-9);
}

TEST_CASE("hyperbolic cap foliated inward hits the cone-point caustic") {
  CatalogEntry cap = make_hyperbolic_cap(3, 1.0);
  EmbeddedSurface base = cap.boundary_surface(8);  // t = 1, into-manifold = inward
  CHECK_THROWS_AS(build_normal_foliation(cap.metric, base, 1.0, 9), CausticDetected);
}

TEST_CASE("geodesics leaving the chart raise GeodesicExitedDomain") {
  CatalogEntry warped = make_warped_product(2, 1.0, 0.3);  // T = 0.3
  EmbeddedSurface base = warped.boundary_surface(8);
  CHECK_THROWS_AS(build_normal_foliation(warped.metric, base, 0.5, 5),
                  GeodesicExitedDomain);
}

TEST_CASE("theta profiles: warped MOTS slices, Kottler trapped slices") {
  CatalogEntry warped = make_warped_product(2, 1.0, 2.0);
  InitialDataSet wids = make_umbilic_data(warped.metric, -1.0);
  NormalFoliation wf =
      build_normal_foliation(warped.metric, warped.boundary_surface(8), 1.0, 9);
  CHECK(sup_abs(theta_profile(wf, wids)) < 1e-7);

  CatalogEntry kot = make_toroidal_kottler(3, 0.5);
  InitialDataSet kids = make_umbilic_data(kot.metric, -1.0);
  NormalFoliation kf =
      build_normal_foliation(kot.metric, kot.foliation_base(8), 0.8, 9);
  Eigen::MatrixXd theta = theta_profile(kf, kids);
  CHECK(theta.maxCoeff() < 0.0);
}

TEST_CASE("foliation slices agree with coordinate level sets on theta") {
  CatalogEntry warped = make_warped_product(2, 1.0, 2.0);
  InitialDataSet ids = make_umbilic_data(warped.metric, -1.0);
  NormalFoliation f =
      build_normal_foliation(warped.metric, warped.boundary_surface(8), 0.8, 5);
  Eigen::MatrixXd theta = theta_profile(f, ids);
  for (int j = 0; j < f.slices(); ++j) {
    EmbeddedSurface level =
        warped.level_surface(f.t_grid[static_cast<std::size_t>(j)], 8);
    Eigen::VectorXd level_theta = theta_on_grid(level, ids);
    CHECK(sup_abs(theta.row(j).transpose() - level_theta) < 1e-9);
  }
}

TEST_CASE("evolution consistency on the warped product is exact to integrator noise") {
  CatalogEntry warped = make_warped_product(2, 1.0, 2.0);
  InitialDataSet ids = make_umbilic_data(warped.metric, -1.0);
  NormalFoliation f =
      build_normal_foliation(warped.metric, warped.boundary_surface(8), 1.0, 9);
  EvolutionConsistency ec = evolution_consistency(f, ids);
  CHECK(ec.max_deviation < 1e-6);

  // every term of the evolution rhs vanishes on these slices
  for (int j : {1, 4, 7}) {
    SliceData sd = slice_data(f, ids, j);
    Eigen::VectorXd rhs =
        evolution_rhs(sd, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(f.grid.size())));
    CHECK(rhs.cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("evolution consistency converges at second order on a random warp") {
  auto warp = [](auto t) { return 1.0 + 0.25 * sin(t) + 0.1 * cos(2.0 * t + 0.3); };
  MetricField m = custom_war_metric(warp, -0.5, 1.5, "random_warp");
  InitialDataSet ids = make_umbilic_data(m, -1.0);

  auto run = [&](int slices) {
    EmbeddedSurface base = EmbeddedSurface::coordinate_level_set(
        m, 0.0, FiberGrid::torus(2, 8), increasing_t(3));
    NormalFoliation f = build_normal_foliation(m, base, 0.8, slices);
    return evolution_consistency(f, ids);
  };
  EvolutionConsistency coarse = run(9);  // dt = 0.1
  EvolutionConsistency fine = run(17);   // dt = 0.05

  // compare at the shared interior times: coarse index j sits at fine 2j+1
  double coarse_sup = 0.0, fine_sup = 0.0;
  for (std::size_t j = 0; j < coarse.per_slice.size(); ++j) {
    coarse_sup = std::max(coarse_sup, coarse.per_slice[j]);
    CHECK(coarse.times[j] == doctest::Approx(fine.times[2 * j + 1]).epsilon(1e-12));
    fine_sup = std::max(fine_sup, fine.per_slice[2 * j + 1]);
  }
  const double ratio = coarse_sup / fine_sup;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("verify_splitting across the theorem branches") {
  // Theorem 1.4 shape: e^{+2 eps t} with K = -eps g
  for (double eps : {0.0, 1.0}) {
    CatalogEntry warped = make_warped_product(2, eps, 2.0);
    InitialDataSet ids = make_umbilic_data(warped.metric, -eps);
    NormalFoliation f =
        build_normal_foliation(warped.metric, warped.boundary_surface(8), 1.0, 9);
    SplitReport rep = verify_splitting(f, ids, eps);
    INFO("eps=", eps, " reason=", rep.reason);
    CHECK(rep.verdict);
    CHECK(rep.max_theta < 1e-6);
    CHECK(rep.max_chi_dev < 1e-6);
    CHECK(rep.max_lapse_dev < 1e-6);
    CHECK(rep.max_warp_dev < 1e-6);
    CHECK(rep.ricci_flat_dev < 1e-6);
  }
  // Theorem 1.5 shape: e^{-2 eps t} with K = +eps g
  {
    CatalogEntry warped = make_warped_product(2, -1.0, 2.0);
    InitialDataSet ids = make_umbilic_data(warped.metric, 1.0);
    NormalFoliation f =
        build_normal_foliation(warped.metric, warped.boundary_surface(8), 1.0, 9);
    SplitReport rep = verify_splitting(f, ids, -1.0);
    CHECK(rep.verdict);
    CHECK(rep.max_warp_dev < 1e-6);
  }
}

TEST_CASE("splitting is insensitive to the fiber's flat radii") {
  CatalogEntry warped = make_warped_product(flat_torus_metric(2, {2.0, 0.7}), 1.0, 2.0);
  InitialDataSet ids = make_umbilic_data(warped.metric, -1.0);
  NormalFoliation f =
      build_normal_foliation(warped.metric, warped.boundary_surface(8), 1.0, 9);
  SplitReport rep = verify_splitting(f, ids, 1.0);
  CHECK(rep.verdict);
  CHECK(rep.max_warp_dev < 1e-6);
}

TEST_CASE("splitting holds in n = 4 over a flat T^3 fiber") {
  CatalogEntry warped = make_warped_product(3, 1.0, 2.0);
  InitialDataSet ids = make_umbilic_data(warped.metric, -1.0);
  EmbeddedSurface base = warped.boundary_surface(8);  // 8^3 grid
  NormalFoliation f = build_normal_foliation(warped.metric, base, 0.6, 5);
  SplitReport rep = verify_splitting(f, ids, 1.0);
  INFO("reason=", rep.reason);
  CHECK(rep.verdict);
  CHECK(rep.max_theta < 1e-7);
  CHECK(rep.max_warp_dev < 1e-6);
  CHECK(rep.ricci_flat_dev < 1e-6);
}

TEST_CASE("verify_splitting passes for every delta_max on the global warped product") {
  CatalogEntry warped = make_warped_product(2, 1.0, 3.0);
  InitialDataSet ids = make_umbilic_data(warped.metric, -1.0);
  for (double delta : {0.5, 1.0, 2.0}) {
    NormalFoliation f =
        build_normal_foliation(warped.metric, warped.boundary_surface(8), delta, 9);
    CHECK(verify_splitting(f, ids, 1.0).verdict);
  }
}

TEST_CASE("AdS-Schwarzschild boundary foliation fails the splitting verdict") {
  CatalogEntry ads = make_ads_schwarzschild(3, 0.5);
  InitialDataSet ids = make_umbilic_data(ads.metric, -1.0);
  NormalFoliation f =
      build_normal_foliation(ads.metric, ads.boundary_surface(8), 1.0, 9);
  SplitReport rep = verify_splitting(f, ids, 1.0);
  CHECK_FALSE(rep.verdict);
  CHECK(rep.reason == "interior slices untrapped (theta > 0)");
}

TEST_CASE("chart-supplied foliation with a t-dependent lapse still splits") {
  // psi(t) = 1 + 0.2 sin t; s(t) = t + 0.2(1 - cos t) so ds = psi dt and the
  // metric is the hyperbolic warped product in disguise.
  MetricField m(
      3,
      [](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        S psi = 1.0 + 0.2 * sin(x[0]);
        S s = x[0] + 0.2 * (1.0 - cos(x[0]));
        S w = exp(2.0 * s);
        SymMat<S> g(3);
        g(0, 0) = psi * psi;
        g(1, 1) = w;
        g(2, 2) = w;
        return g;
      },
      [](const ChartPoint& p) { return p.coords[0] > -0.5 && p.coords[0] < 1.5; },
      "disguised_warp");
  InitialDataSet ids = make_umbilic_data(m, -1.0);

  std::vector<double> t_grid;
  for (int j = 0; j < 9; ++j) t_grid.push_back(0.8 * j / 8.0);
  NormalFoliation f =
      foliation_from_chart(m, FiberGrid::torus(2, 8), FiberTopology::Torus, t_grid);

  SplitReport rep = verify_splitting(f, ids, 1.0);
  INFO("reason=", rep.reason, " warp_dev=", rep.max_warp_dev);
  CHECK(rep.verdict);
  CHECK(rep.max_lapse_dev < 1e-10);  // psi is x-independent
}

TEST_CASE("theta-gate failure reasons") {
  CatalogEntry kot = make_toroidal_kottler(3, 0.5);
  InitialDataSet ids = make_umbilic_data(kot.metric, -1.0);
  NormalFoliation f =
      build_normal_foliation(kot.metric, kot.foliation_base(8), 0.8, 9);
  SplitReport rep = verify_splitting(f, ids, 1.0);
  CHECK_FALSE(rep.verdict);
  CHECK(rep.reason == "interior slices outer trapped");
}
