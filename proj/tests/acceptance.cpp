// Distributed under the MIT License.
// See LICENSE.txt for details.
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion is self-contained and pinned to its stated
// tolerance.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "motskit/foliation.hpp"
#include "motskit/obata.hpp"
#include "motskit/stability.hpp"
#include "support/test_helpers.hpp"

using namespace motskit;
using namespace motskit::testing;

namespace {

int g_failures = 0;

void report_line(int criterion, bool pass, const std::string& what) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " - "
            << what << "\n";
  if (!pass) ++g_failures;
}

struct Gate {
  bool ok = true;
  double worst = 0.0;
  void absorb(double value, double tol) {
    worst = std::max(worst, std::abs(value));
    ok = ok && std::abs(value) <= tol;
  }
};

// 1. Spatial Schwarzschild (n=3, m=1): |S| < 1e-8 at 20 random points
//    r > 1/2; horizon H and theta (K=0) both < 1e-6, isotropic chart.
void criterion_1() {
  CatalogEntry schw = make_spatial_schwarzschild(3, 1.0);
  Gate gate;
  for (const ChartPoint& p : catalog_sample_points(schw, 20, 101))
    gate.absorb(curvature(schw.metric, p).scalar, 1e-8);

  EmbeddedSurface horizon = schw.boundary_surface(16);
  InitialDataSet tsym = make_umbilic_data(schw.metric, 0.0);
  for (std::size_t node = 0; node < horizon.grid().size(); ++node) {
    NullExpansionValues nev = null_expansion(horizon, tsym, horizon.grid().node(node));
    gate.absorb(nev.geometry.mean_curvature, 1e-6);
    gate.absorb(nev.theta, 1e-6);
  }
  std::ostringstream what;
  what << "spatial Schwarzschild: S = 0, minimal horizon, theta = 0 (worst |dev| = "
       << gate.worst << ")";
  report_line(1, gate.ok, what.str());
}

// 2. AdS-Schwarzschild (n=3 and n=4): S = -n(n-1) +- 1e-8; boundary H = n-1
//    +- 1e-6; theta with K = -g equals 0 +- 1e-6.
void criterion_2() {
  Gate gate;
  for (int n : {3, 4}) {
    CatalogEntry ads = make_ads_schwarzschild(n, 0.5);
    for (const ChartPoint& p : catalog_sample_points(ads, 20, 102))
      gate.absorb(curvature(ads.metric, p).scalar + n * (n - 1), 1e-8);

    EmbeddedSurface boundary = ads.boundary_surface(n == 3 ? 16 : 8);
    InitialDataSet umb = make_umbilic_data(ads.metric, -1.0);
    for (std::size_t node = 0; node < boundary.grid().size(); ++node) {
      NullExpansionValues nev = null_expansion(boundary, umb, boundary.grid().node(node));
      gate.absorb(nev.geometry.mean_curvature - (n - 1), 1e-6);
      gate.absorb(nev.theta, 1e-6);
    }
  }
  std::ostringstream what;
  what << "AdS-Schwarzschild n=3,4: S = -n(n-1), boundary H = n-1, theta(K=-g) = 0 "
       << "(worst |dev| = " << gate.worst << ")";
  report_line(2, gate.ok, what.str());
}

// 3. Toroidal Kottler (n=3, m=1/2): S = -6 +- 1e-8; theta(r) < 0 on (r0, 3];
//    theta(2) matches the closed form to 1e-4.
void criterion_3() {
  CatalogEntry kot = make_toroidal_kottler(3, 0.5);
  Gate gate;
  for (const ChartPoint& p : catalog_sample_points(kot, 20, 103))
    gate.absorb(curvature(kot.metric, p).scalar + 6.0, 1e-8);

  InitialDataSet ids = make_umbilic_data(kot.metric, -1.0);
  bool all_trapped = true;
  for (int i = 0; i < 25; ++i) {
    const double r = 1.01 + (3.0 - 1.01) * i / 24.0;
    EmbeddedSurface slice = kot.level_surface(r, 8);
    all_trapped = all_trapped && (theta_on_grid(slice, ids).maxCoeff() < 0.0);
  }

  EmbeddedSurface slice2 = kot.level_surface(2.0, 8);
  const double theta2 = theta_on_grid(slice2, ids).mean();
  const double closed = 2.0 * (std::sqrt(1.0 - 1.0 / 8.0) - 1.0);  // -0.1291713...
  const bool theta2_ok = std::abs(theta2 - closed) < 1e-4;

  std::ostringstream what;
  what << "toroidal Kottler: S = -6, theta < 0 on (r0, 3], theta(2) = " << theta2
       << " vs closed form " << closed;
  report_line(3, gate.ok && all_trapped && theta2_ok, what.str());
}

// 4. Warped rigidity: verify_splitting passes with all deviations < 1e-6 for
//    e^{+2 eps t} with K = -eps g and e^{-2 eps t} with K = +eps g, eps in {0,1}.
void criterion_4() {
  bool ok = true;
  double worst = 0.0;
  auto run_branch = [&](double metric_sign, double data_factor, double rate) {
    CatalogEntry warped = make_warped_product(2, metric_sign, 2.0);
    InitialDataSet ids = make_umbilic_data(warped.metric, data_factor);
    NormalFoliation f =
        build_normal_foliation(warped.metric, warped.boundary_surface(8), 1.0, 17);
    SplitReport rep = verify_splitting(f, ids, rate);
    ok = ok && rep.verdict;
    for (double dev : {rep.max_theta, rep.max_chi_dev, rep.max_lapse_dev,
                       rep.max_warp_dev, rep.ricci_flat_dev}) {
      ok = ok && dev < 1e-6;
      worst = std::max(worst, dev);
    }
  };
  for (double eps : {0.0, 1.0}) run_branch(eps, -eps, eps);    // dt^2 + e^{2 eps t} h
  for (double eps : {0.0, 1.0}) run_branch(-eps, eps, -eps);   // dt^2 + e^{-2 eps t} h
  std::ostringstream what;
  what << "warped rigidity: both theorem branches split (worst deviation = " << worst
       << ")";
  report_line(4, ok, what.str());
}

// 5. Stability spectrum: lambda1(-Lap) = 0 +- 1e-8 on the 32^2 torus;
//    lambda1(-Lap + c) = c +- 1e-8; real principal eigenvalue and positive
//    eigenfunction for 5 random drift fields.
void criterion_5() {
  bool ok = true;
  double worst = 0.0;
  FiberGrid grid32 = FiberGrid::torus(2, 32);
  auto flat = Eigen::MatrixXd::Identity(2, 2);

  PrincipalEig base = principal_eigenvalue(assemble_from_coefficients(
      grid32, flat, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid32.size())),
      Eigen::MatrixXd()));
  ok = ok && std::abs(base.lambda1) < 1e-8;
  worst = std::max(worst, std::abs(base.lambda1));

  for (double c : {-1.0, 0.5, 3.0}) {
    PrincipalEig shifted = principal_eigenvalue(assemble_from_coefficients(
        grid32, flat,
        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid32.size()), c),
        Eigen::MatrixXd()));
    ok = ok && std::abs(shifted.lambda1 - c) < 1e-8;
    worst = std::max(worst, std::abs(shifted.lambda1 - c));
  }

  FiberGrid grid16 = FiberGrid::torus(2, 16);
  for (unsigned seed = 0; seed < 5; ++seed) {
    auto gen = rng(500 + seed);
    Eigen::MatrixXd drift(grid16.size(), 2);
    Eigen::VectorXd pot(grid16.size());
    const double a1 = uniform(gen, -0.6, 0.6), b1 = uniform(gen, -0.6, 0.6);
    const double a2 = uniform(gen, -0.6, 0.6), b2 = uniform(gen, -0.6, 0.6);
    for (std::size_t i = 0; i < grid16.size(); ++i) {
      const Eigen::VectorXd u = grid16.node(i);
      drift(static_cast<Eigen::Index>(i), 0) = a1 * std::sin(u[1]) + b1 * std::cos(u[0] + 0.2);
      drift(static_cast<Eigen::Index>(i), 1) = a2 * std::cos(u[1] - 0.4) + b2 * std::sin(u[0]);
      pot[static_cast<Eigen::Index>(i)] = 0.4 * std::sin(u[0]) * std::cos(u[1]);
    }
    try {
      PrincipalEig eig = principal_eigenvalue(
          assemble_from_coefficients(grid16, flat, pot, drift));
      ok = ok && eig.eigenfunction.minCoeff() >= 0.0 && eig.residual < 1e-6;
    } catch (const Error&) {
      ok = false;
    }
  }
  std::ostringstream what;
  what << "stability spectrum: lambda1 shifts exact (worst = " << worst
       << "), 5 drift fields real + positive";
  report_line(5, ok, what.str());
}

// 6. Evolution consistency: sup deviation < 1e-6 on the warped product;
//    second-order convergence (ratio 4 +- 25%) on a randomized warp.
void criterion_6() {
  CatalogEntry warped = make_warped_product(2, 1.0, 2.0);
  InitialDataSet wids = make_umbilic_data(warped.metric, -1.0);
  NormalFoliation wf =
      build_normal_foliation(warped.metric, warped.boundary_surface(8), 1.0, 17);
  const double warped_dev = evolution_consistency(wf, wids).max_deviation;

  MetricField random_warp(
      3,
      [](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        S a = 1.0 + 0.25 * sin(x[0]) + 0.1 * cos(2.0 * x[0] + 0.3);
        SymMat<S> g(3);
        g(0, 0) = S(1.0);
        g(1, 1) = a * a;
        g(2, 2) = a * a;
        return g;
      },
      [](const ChartPoint& p) { return p.coords[0] > -0.5 && p.coords[0] < 1.5; },
      "random_warp");
  InitialDataSet rids = make_umbilic_data(random_warp, -1.0);
  auto run = [&](int slices) {
    auto up = NormalChoice::user_vector([](const ChartPoint&) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
      v[0] = 1.0;
      return v;
    });
    EmbeddedSurface base = EmbeddedSurface::coordinate_level_set(
        random_warp, 0.0, FiberGrid::torus(2, 8), up);
    return evolution_consistency(build_normal_foliation(random_warp, base, 0.8, slices),
                                 rids);
  };
  EvolutionConsistency coarse = run(9), fine = run(17);
  double coarse_sup = 0.0, fine_sup = 0.0;
  for (std::size_t j = 0; j < coarse.per_slice.size(); ++j) {
    coarse_sup = std::max(coarse_sup, coarse.per_slice[j]);
    fine_sup = std::max(fine_sup, fine.per_slice[2 * j + 1]);
  }
  const double ratio = coarse_sup / fine_sup;
  const bool ok = warped_dev < 1e-6 && ratio > 3.0 && ratio < 5.0;
  std::ostringstream what;
  what << "theta evolution: warped dev = " << warped_dev << ", refinement ratio = "
       << ratio << " (target 4 +- 25%)";
  report_line(6, ok, what.str());
}

// 7. Obata suite: xi closed form vs ODE < 1e-9 on [0,5]; cusp sectional -1
//    +- 1e-8 and residual < 1e-8; |int Lap c1| < 1e-10; Jacobi ratio to 1e-6.
void criterion_7() {
  bool ok = true;
  auto gen = rng(700);
  for (int trial = 0; trial < 20; ++trial) {
    ObataSolution sol = solve_warp_ode(uniform(gen, -2, 2), uniform(gen, 0.2, 2.5));
    ok = ok && xi_ode_deviation(sol, 5.0) < 1e-9;
  }

  ReconstructReport rep;
  ReconstructedManifold cusp =
      reconstruct_and_verify(1.0, 1.0, flat_torus_metric(2, {}), &rep);
  ok = ok && rep.obata_residual < 1e-8;
  double worst_sectional = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    ChartPoint p = ChartPoint::of(
        {uniform(gen, 0.0, 2.0), uniform(gen, 0.0, 6.0), uniform(gen, 0.0, 6.0)});
    const double k = sectional_curvature(cusp.metric, p, random_vector(gen, 3),
                                         random_vector(gen, 3));
    worst_sectional = std::max(worst_sectional, std::abs(k + 1.0));
  }
  ok = ok && worst_sectional < 1e-8;

  // |int Lap c1| over the closed fiber, random smooth c1
  FiberGrid grid = FiberGrid::torus(2, 32);
  MetricField h = flat_torus_metric(2, {});
  Eigen::VectorXd c1(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd u = grid.node(i);
    c1[static_cast<Eigen::Index>(i)] =
        0.7 * std::sin(u[0]) - 0.4 * std::cos(2.0 * u[1]) + 0.2 * std::sin(u[0] + u[1]);
  }
  LevelSetReport ls = level_set_analysis(grid, h, c1, 0.0, 3);
  const double integral = ls.c2_from_integral * 2.0 * 2.0 * 4.0 * M_PI * M_PI;
  ok = ok && std::abs(integral) < 1e-10;

  const double jacobi = jacobi_growth_check(1.0, 0.1);
  const double jacobi_closed =
      (std::exp(1.0) - std::exp(-1.0)) / (std::exp(0.1) - std::exp(-0.1));
  ok = ok && std::abs(jacobi - jacobi_closed) < 1e-6;

  std::ostringstream what;
  what << "Obata suite: ODE match, cusp curvature (worst |K+1| = " << worst_sectional
       << "), int Lap c1 = " << integral << ", Jacobi ratio dev = "
       << std::abs(jacobi - jacobi_closed);
  report_line(7, ok, what.str());
}

// 8. Cross-oracle: dual-number curvature vs the finite-difference oracle
//    < 1e-6 componentwise on all catalog metrics, 20 points each.
void criterion_8() {
  bool ok = true;
  double worst = 0.0;
  for (const FamilyInfo& f : catalog_families()) {
    CatalogEntry entry = parse_metric_spec(f.default_spec);
    for (const ChartPoint& p : catalog_sample_points(entry, 20, 108)) {
      const double dev = bundle_deviation(curvature(entry.metric, p),
                                          fd_curvature_oracle(entry.metric, p, 1e-3));
      worst = std::max(worst, dev);
      ok = ok && dev < 1e-6;
    }
  }
  std::ostringstream what;
  what << "cross-oracle: AD vs FD4 curvature on 5 families x 20 points (worst = "
       << worst << ")";
  report_line(8, ok, what.str());
}

// 9. Determinism: byte-identical verify JSON across reruns and
//    MOTSKIT_THREADS in {1, 8}.
void criterion_9() {
  const std::string cli = MOTSKIT_CLI_PATH;
  const std::string tmp = MOTSKIT_TEST_TMPDIR;
  auto run = [&](const std::string& env, const std::string& out) {
    const std::string cmd = env + " " + cli +
                            " verify --metric warped:eps=1 --data KminusEpsG"
                            " --check dec --check splitting --seed 3 --out " +
                            out + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string a = tmp + "/acc_det_a.json", b = tmp + "/acc_det_b.json",
                    c = tmp + "/acc_det_c.json";
  bool ok = run("MOTSKIT_THREADS=1", a) == 0;
  ok = run("MOTSKIT_THREADS=1", b) == 0 && ok;
  ok = run("MOTSKIT_THREADS=8", c) == 0 && ok;
  const std::string ta = slurp(a);
  ok = ok && !ta.empty() && ta == slurp(b) && ta == slurp(c);
  report_line(9, ok, "determinism: byte-identical verify JSON, MOTSKIT_THREADS in {1,8}");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::cout << "ACCEPTANCE: " << (9 - g_failures) << "/9 criteria pass\n";
  return g_failures == 0 ? 0 : 1;
}
