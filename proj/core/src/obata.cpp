// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/obata.hpp"

#include <cmath>
#include <numbers>

#include "motskit/ode.hpp"

namespace motskit {

ObataSolution solve_warp_ode(double a, double grad_norm) {
  if (!(grad_norm > 0.0)) throw InvalidParam("solve_warp_ode: grad_norm must be > 0");
  ObataSolution sol;
  sol.a = a;
  sol.grad_norm = grad_norm;
  sol.c1 = 0.5 * (a + grad_norm);
  sol.c2 = 0.5 * (a - grad_norm);
  sol.kind = ObataSolution::Case::Noncompact;
  return sol;
}

double xi_closed_form(const ObataSolution& sol, double t) {
  return (sol.c1 * std::exp(t) - sol.c2 * std::exp(-t)) / (sol.c1 - sol.c2);
}

double f_closed_form(const ObataSolution& sol, double t) {
  return sol.c1 * std::exp(t) + sol.c2 * std::exp(-t);
}

double xi_ode_deviation(const ObataSolution& sol, double t_max, int samples) {
  if (samples < 2) throw InvalidParam("xi_ode_deviation: samples >= 2");
  // y = (xi, xi'), y' = (xi', xi)
  auto rhs = [](double, const Eigen::VectorXd& y) {
    Eigen::VectorXd d(2);
    d[0] = y[1];
    d[1] = y[0];
    return d;
  };
  Eigen::VectorXd y(2);
  y[0] = 1.0;
  y[1] = sol.a / sol.grad_norm;
  double dev = 0.0;
  double t = 0.0;
  const double dt = t_max / (samples - 1);
  for (int i = 1; i < samples; ++i) {
    const double t_next = i * dt;
    y = integrate_rk4(rhs, t, y, t_next, 64);
    t = t_next;
    dev = std::max(dev, std::abs(y[0] - xi_closed_form(sol, t)));
  }
  return dev;
}

WarpedProfile warped_profile_from(const ObataSolution& sol, const MetricField& fiber) {
  WarpedProfile profile;
  profile.xi = ScalarField(1, [c1 = sol.c1, c2 = sol.c2, d = sol.c1 - sol.c2](auto x) {
    return (c1 * exp(x[0]) - c2 * exp(-x[0])) / d;
  });
  profile.fiber = fiber;
  profile.sign = sol.a / sol.grad_norm;  // xi'(0)
  return profile;
}

double hessian_residual(const MetricField& m, const ScalarField& f,
                        std::span<const ChartPoint> points) {
  if (f.dim() != m.dim()) throw InvalidParam("hessian_residual: dimension mismatch");
  const int n = m.dim();
  double sup = 0.0;
  for (const ChartPoint& p : points) {
    ChristoffelJet cj = christoffel_jet(m, p);
    double fv;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    f.second_derivatives(p, fv, grad, hess);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double cov = hess(i, j);
        for (int k = 0; k < n; ++k) cov -= cj.gamma[k](i, j) * grad[k];
        sup = std::max(sup, std::abs(cov - fv * cj.g(i, j)));
      }
  }
  return sup;
}

LevelSetReport level_set_analysis(const FiberGrid& grid, const MetricField& fiber_h,
                                  const Eigen::VectorXd& c1_values, double claimed_c2,
                                  int ambient_n) {
  if (grid.kind() != GridKind::Torus)
    throw UnsupportedTopology("level_set_analysis: closed torus fibers only");
  if (static_cast<std::size_t>(c1_values.size()) != grid.size())
    throw InvalidParam("level_set_analysis: c1 must be sampled on the grid");
  if (ambient_n < 3) throw InvalidParam("level_set_analysis: ambient dimension >= 3");

  std::vector<Eigen::MatrixXd> h_nodes(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ChartPoint p{grid.node(i), "default"};
    h_nodes[i] = fiber_h.components(p);
  }

  const Eigen::MatrixXd lap =
      laplace_beltrami(grid, h_nodes, DiscretizationOrder::Spectral);
  const Eigen::VectorXd lap_c1 = lap * c1_values;

  LevelSetReport rep;
  rep.laplacian_identity_dev =
      (lap_c1.array() - 2.0 * (ambient_n - 1) * claimed_c2).abs().maxCoeff();

  const Eigen::VectorXd w = grid_measure(grid, h_nodes);
  const double area = w.sum();
  rep.c2_from_integral = w.dot(lap_c1) / (2.0 * (ambient_n - 1) * area);

  const double mean = w.dot(c1_values) / area;
  rep.c1_constancy_dev = (c1_values.array() - mean).abs().maxCoeff();
  return rep;
}

ReconstructedManifold reconstruct_and_verify(double a, double grad_norm,
                                             const MetricField& fiber,
                                             ReconstructReport* report) {
  ObataSolution sol = solve_warp_ode(a, grad_norm);
  const int k = fiber.dim();
  const int n = k + 1;

  // Ricci-flat fiber precondition (sampled).
  {
    Eigen::VectorXd u = Eigen::VectorXd::Constant(k, 0.7);
    CurvatureBundle b = curvature(fiber, ChartPoint{u, "default"});
    if (b.ricci.cwiseAbs().maxCoeff() > 1e-8)
      throw InvalidParam("reconstruct_and_verify: fiber is not Ricci flat");
  }

  ReconstructedManifold out;
  out.solution = sol;
  out.profile = warped_profile_from(sol, fiber);

  const double c1 = sol.c1, c2 = sol.c2, denom = sol.c1 - sol.c2;
  out.metric = MetricField(
      n,
      [k, c1, c2, denom, fib = fiber.component_field()](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        SymMat<S> h = fib.template eval_components<S>(std::span<const S>(x.data() + 1, k));
        S xi = (c1 * exp(x[0]) - c2 * exp(-x[0])) / denom;
        S w = xi * xi;
        SymMat<S> g(k + 1);
        g(0, 0) = S(1.0);
        for (int i = 0; i < k; ++i)
          for (int j = i; j < k; ++j) g(i + 1, j + 1) = w * h(i, j);
        return g;
      },
      [](const ChartPoint& p) { return p.coords[0] >= -1e-12; },
      "obata_reconstruction");

  out.f_field = ScalarField(n, [c1, c2](auto x) {
    return c1 * exp(x[0]) + c2 * exp(-x[0]);
  });

  // Obata residual on a (t, x) sample grid.
  std::vector<std::pair<double, double>> box;
  box.push_back({0.0, 2.0});
  for (int i = 0; i < k; ++i) box.push_back({0.0, 2.0 * std::numbers::pi});
  std::vector<ChartPoint> pts = halton_points(box, 25, 3);
  ReconstructReport rep;
  rep.obata_residual = hessian_residual(out.metric, out.f_field, pts);

  // Slice shape identity A = (xi'/xi) h at t = 0.8.
  {
    const double t_ref = 0.8;
    auto increasing_t = [n](const ChartPoint&) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v[0] = 1.0;
      return v;
    };
    EmbeddedSurface slice = EmbeddedSurface::coordinate_level_set(
        out.metric, t_ref, FiberGrid::torus(k, 8),
        NormalChoice::user_vector(increasing_t));
    const double xi = xi_closed_form(sol, t_ref);
    const double xi_prime = (c1 * std::exp(t_ref) + c2 * std::exp(-t_ref)) / denom;
    double dev = 0.0;
    for (int s = 0; s < 5; ++s) {
      const std::size_t idx = (slice.grid().size() * static_cast<std::size_t>(s)) / 5;
      SurfacePointGeometry geom = surface_point_geometry(slice, slice.grid().node(idx));
      dev = std::max(dev, (geom.second_fund - (xi_prime / xi) * geom.induced)
                              .cwiseAbs()
                              .maxCoeff());
    }
    rep.shape_residual = dev;
  }

  if (report) *report = rep;
  if (rep.obata_residual > 1e-8)
    throw ResidualExceeded("reconstruct_and_verify: Obata residual " +
                           std::to_string(rep.obata_residual) + " exceeds 1e-8");
  return out;
}

double jacobi_growth_check(double r_max, double r0) {
  if (!(r0 > 0.0) || !(r_max > r0))
    throw InvalidParam("jacobi_growth_check: need 0 < r0 < R");
  // J'' = -K J with K = -1; J(0) = 0, J'(0) = 1
  auto rhs = [](double, const Eigen::VectorXd& y) {
    Eigen::VectorXd d(2);
    d[0] = y[1];
    d[1] = y[0];
    return d;
  };
  Eigen::VectorXd y(2);
  y[0] = 0.0;
  y[1] = 1.0;
  OdeOptions opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-12;
  y = integrate_rk45(rhs, 0.0, y, r0, opt);
  const double j_r0 = y[0];
  y = integrate_rk45(rhs, r0, y, r_max, opt);
  const double j_r = y[0];
  return std::abs(j_r) / std::abs(j_r0);
}

}  // namespace motskit
