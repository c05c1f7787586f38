// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include "motskit/obata.hpp"
#include "support/test_helpers.hpp"

using namespace motskit;
using namespace motskit::testing;

TEST_CASE("solve_warp_ode closed forms") {
  ObataSolution e_plus = solve_warp_ode(1.0, 1.0);
  CHECK(e_plus.c1 == doctest::Approx(1.0));
  CHECK(e_plus.c2 == doctest::Approx(0.0));
  CHECK(xi_closed_form(e_plus, 1.3) == doctest::Approx(std::exp(1.3)).epsilon(1e-14));

  ObataSolution e_minus = solve_warp_ode(-1.0, 1.0);
  CHECK(e_minus.c1 == doctest::Approx(0.0));
  CHECK(e_minus.c2 == doctest::Approx(-1.0));
  CHECK(xi_closed_form(e_minus, 0.8) == doctest::Approx(std::exp(-0.8)).epsilon(1e-14));

  ObataSolution cosh_sol = solve_warp_ode(0.0, 2.0);
  CHECK(cosh_sol.c1 == doctest::Approx(1.0));
  CHECK(cosh_sol.c2 == doctest::Approx(-1.0));
  CHECK(xi_closed_form(cosh_sol, 0.9) == doctest::Approx(std::cosh(0.9)).epsilon(1e-14));

  CHECK_THROWS_AS(solve_warp_ode(1.0, 0.0), InvalidParam);
  CHECK_THROWS_AS(solve_warp_ode(1.0, -2.0), InvalidParam);
}

TEST_CASE("xi: closed form vs numerical integration on [0,5], random data") {
  auto gen = rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = uniform(gen, -2.0, 2.0);
    const double g = uniform(gen, 0.2, 2.5);
    ObataSolution sol = solve_warp_ode(a, g);
    CHECK(xi_ode_deviation(sol, 5.0) < 1e-9);
    // boundary conditions of Eq-style data: xi(0) = 1, xi'(0) = a/g
    CHECK(xi_closed_form(sol, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    const double d0 = (xi_closed_form(sol, 1e-6) - xi_closed_form(sol, -1e-6)) / 2e-6;
    CHECK(d0 == doctest::Approx(a / g).epsilon(1e-8));
    CHECK(sol.c1 + sol.c2 == doctest::Approx(a).epsilon(1e-14));
    CHECK(sol.c1 - sol.c2 == doctest::Approx(g).epsilon(1e-14));
  }
}

TEST_CASE("hessian residual: solutions pass, non-solutions fail") {
  // reconstructed cusp dt^2 + e^{2t} h with f = e^t
  ReconstructReport rep;
  ReconstructedManifold cusp = reconstruct_and_verify(1.0, 1.0, flat_torus_metric(2, {}), &rep);
  CHECK(rep.obata_residual < 1e-8);
  CHECK(rep.shape_residual < 1e-8);

  // hyperbolic cap with f = cosh t
  CatalogEntry cap = make_hyperbolic_cap(3, 1.0);
  ScalarField f_cosh(3, [](auto x) {
    return cosh(x[0]);
  });
  std::vector<ChartPoint> pts = catalog_sample_points(cap, 10, 21);
  CHECK(hessian_residual(cap.metric, f_cosh, pts) < 1e-8);

  // Euclidean f = x1 is not an Obata solution: residual = sup |f|
  ScalarField f_x1(3, [](auto x) {
    using S = std::remove_cvref_t<decltype(x[0])>;
    return S(x[0]);
  });
  std::vector<ChartPoint> flat_pts = halton_points({{-1, 1}, {-1, 1}, {-1, 1}}, 16, 4);
  double expected = 0.0;
  for (const ChartPoint& p : flat_pts) expected = std::max(expected, std::abs(p.coords[0]));
  const double res = hessian_residual(euclidean_metric(3), f_x1, flat_pts);
  CHECK(res == doctest::Approx(expected).epsilon(1e-13));
  CHECK(res > 0.1);

  // linearity: residual(-f) = residual(f)
  ScalarField f_neg(3, [](auto x) {
    using S = std::remove_cvref_t<decltype(x[0])>;
    return S(-x[0]);
  });
  CHECK(hessian_residual(euclidean_metric(3), f_neg, flat_pts) ==
        doctest::Approx(res).epsilon(1e-13));
}

TEST_CASE("level-set analysis on the flat torus") {
  FiberGrid grid = FiberGrid::torus(2, 32);
  MetricField h = flat_torus_metric(2, {});

  // constant c1 with c2 = 0: everything vanishes
  Eigen::VectorXd c1_const = Eigen::VectorXd::Constant(grid.size(), 2.5);
  LevelSetReport r0 = level_set_analysis(grid, h, c1_const, 0.0, 3);
  CHECK(r0.laplacian_identity_dev < 1e-10);
  CHECK(std::abs(r0.c2_from_integral) < 1e-10);
  CHECK(r0.c1_constancy_dev < 1e-12);

  // c1 = sin x with claimed c2 = 0: Lap sin x = -sin x, so the identity
  // deviation is sup |sin| = 1
  Eigen::VectorXd c1_sin(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    c1_sin[static_cast<Eigen::Index>(i)] = std::sin(grid.node(i)[0]);
  LevelSetReport r1 = level_set_analysis(grid, h, c1_sin, 0.0, 3);
  CHECK(r1.laplacian_identity_dev == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(r1.c2_from_integral) < 1e-10);

  // any smooth c1: the divergence theorem forces int Lap c1 = 0
  auto gen = rng(31);
  Eigen::VectorXd c1_rand(grid.size());
  const double a = uniform(gen, -1, 1), b = uniform(gen, -1, 1), c = uniform(gen, -1, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd u = grid.node(i);
    c1_rand[static_cast<Eigen::Index>(i)] =
        a * std::sin(u[0]) + b * std::cos(2 * u[1]) + c * std::sin(u[0] + u[1]);
  }
  LevelSetReport r2 = level_set_analysis(grid, h, c1_rand, 0.0, 3);
  CHECK(std::abs(r2.c2_from_integral) < 1e-10);

  CHECK_THROWS_AS(
      level_set_analysis(FiberGrid::sphere({8, 16}), h, c1_const, 0.0, 3),
      UnsupportedTopology);
}

TEST_CASE("reconstruction: cusp branches and the symmetric neck") {
  // delta = 1 branch: dt^2 + e^{2t} h
  ReconstructedManifold plus = reconstruct_and_verify(1.0, 1.0, flat_torus_metric(2, {}));
  MetricEval ev = plus.metric.eval(ChartPoint::of({0.5, 1.0, 1.0}));
  CHECK(ev.g(1, 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

  // delta = -1 branch: dt^2 + e^{-2t} h
  ReconstructedManifold minus = reconstruct_and_verify(-1.0, 1.0, flat_torus_metric(2, {}));
  MetricEval evm = minus.metric.eval(ChartPoint::of({0.5, 1.0, 1.0}));
  CHECK(evm.g(1, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  // a = 0: cosh neck; A vanishes on the t = 0 slice since xi'(0) = 0
  ReconstructedManifold neck = reconstruct_and_verify(0.0, 2.0, flat_torus_metric(2, {}));
  auto up = NormalChoice::user_vector([](const ChartPoint&) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
    v[0] = 1.0;
    return v;
  });
  EmbeddedSurface waist = EmbeddedSurface::coordinate_level_set(
      neck.metric, 0.0, FiberGrid::torus(2, 8), up);
  CHECK(sup_abs(surface_point_geometry(waist, waist.grid().node(0)).second_fund) < 1e-10);

  // cusp: sectional curvature -1 on arbitrary planes
  auto gen = rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    ChartPoint p = ChartPoint::of(
        {uniform(gen, 0.0, 2.0), uniform(gen, 0.0, 6.0), uniform(gen, 0.0, 6.0)});
    Eigen::VectorXd x = random_vector(gen, 3), y = random_vector(gen, 3);
    CHECK(sectional_curvature(plus.metric, p, x, y) ==
          doctest::Approx(-1.0).epsilon(1e-9));
  }

  // generic (a, grad) solutions: planes containing d_t still have K = -1
  for (int trial = 0; trial < 5; ++trial) {
    const double a = uniform(gen, -1.5, 1.5), g = uniform(gen, 0.3, 2.0);
    ReconstructedManifold gen_man = reconstruct_and_verify(a, g, flat_torus_metric(2, {}));
    ChartPoint p = ChartPoint::of({uniform(gen, 0.0, 1.5), 1.0, 2.0});
    Eigen::VectorXd t_dir = Eigen::VectorXd::Zero(3);
    t_dir[0] = 1.0;
    Eigen::VectorXd fiber_dir = Eigen::VectorXd::Zero(3);
    fiber_dir[1] = uniform(gen, 0.5, 1.5);
    fiber_dir[2] = uniform(gen, -1.0, 1.0);
    CHECK(sectional_curvature(gen_man.metric, p, t_dir, fiber_dir) ==
          doctest::Approx(-1.0).epsilon(1e-9));
  }

  // a sphere fiber is not Ricci flat
  MetricField round_sphere(
      2,
      [](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        SymMat<S> g(2);
        g(0, 0) = S(1.0);
        S s = sin(x[0]);
        g(1, 1) = s * s;
        return g;
      },
      [](const ChartPoint& p) { return std::sin(p.coords[0]) > 1e-9; }, "round_s2");
  CHECK_THROWS_AS(reconstruct_and_verify(1.0, 1.0, round_sphere), InvalidParam);
}

TEST_CASE("jacobi growth ratios") {
  // closed form (e^R - e^{-R}) / (e^{r0} - e^{-r0})
  const double expected = std::sinh(1.0) / std::sinh(0.1);
  const double ratio = jacobi_growth_check(1.0, 0.1);
  CHECK(std::abs(ratio - expected) < 1e-6);
  CHECK(ratio == doctest::Approx(11.7324552761292).epsilon(1e-6));

  // r0 -> R limit: ratio -> 1
  CHECK(jacobi_growth_check(0.5, 0.4999) == doctest::Approx(1.0).epsilon(1e-3));

  // R = 2 r0 with small r0: sinh(2x)/sinh(x) = 2 cosh(x) -> 2
  CHECK(std::abs(jacobi_growth_check(0.02, 0.01) - 2.0) < 1e-3);

  CHECK_THROWS_AS(jacobi_growth_check(0.5, 0.5), InvalidParam);
  CHECK_THROWS_AS(jacobi_growth_check(0.5, -0.1), InvalidParam);
}

TEST_CASE("warped profile from a solution") {
  ObataSolution sol = solve_warp_ode(0.3, 1.1);
  WarpedProfile profile = warped_profile_from(sol, flat_torus_metric(2, {}));
  for (double t : {0.0, 0.7, 2.0})
    CHECK(profile.xi.value(ChartPoint::of({t})) ==
          doctest::Approx(xi_closed_form(sol, t)).epsilon(1e-14));
  CHECK(profile.xi.value(ChartPoint::of({0.0})) == doctest::Approx(1.0));
}
