// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/foliation.hpp"

#include <cmath>

#include "motskit/ode.hpp"
#include "motskit/parallel.hpp"

namespace motskit {

namespace {

struct PackedState {
  int n = 0, k = 0;

  Eigen::VectorXd pack(const FoliationNodeState& s) const {
    Eigen::VectorXd y(2 * n + 2 * n * k);
    y.segment(0, n) = s.x;
    y.segment(n, n) = s.v;
    for (int a = 0; a < k; ++a) {
      y.segment(2 * n + a * n, n) = s.dx.col(a);
      y.segment(2 * n + n * k + a * n, n) = s.dv.col(a);
    }
    return y;
  }

  FoliationNodeState unpack(const Eigen::VectorXd& y) const {
    FoliationNodeState s;
    s.x = y.segment(0, n);
    s.v = y.segment(n, n);
    s.dx.resize(n, k);
    s.dv.resize(n, k);
    for (int a = 0; a < k; ++a) {
      s.dx.col(a) = y.segment(2 * n + a * n, n);
      s.dv.col(a) = y.segment(2 * n + n * k + a * n, n);
    }
    return s;
  }
};

double gram_det(const MetricField& m, const FoliationNodeState& s) {
  const Eigen::MatrixXd g = m.components(ChartPoint{s.x, "default"});
  const Eigen::MatrixXd h = s.dx.transpose() * g * s.dx;
  return h.determinant();
}

}  // namespace

NormalFoliation build_normal_foliation(const MetricField& m, const EmbeddedSurface& base,
                                       double delta_max, int slices,
                                       const FoliationOptions& opt) {
  if (!(delta_max > 0.0)) throw InvalidParam("build_normal_foliation: delta_max > 0");
  if (slices < 2) throw InvalidParam("build_normal_foliation: need >= 2 slices");
  const int n = m.dim();
  const int k = n - 1;
  const FiberGrid& grid = base.grid();
  const std::size_t n_nodes = grid.size();

  NormalFoliation f;
  f.ambient = m;
  f.grid = grid;
  f.topology = base.topology();
  f.t_grid.resize(static_cast<std::size_t>(slices));
  for (int j = 0; j < slices; ++j)
    f.t_grid[static_cast<std::size_t>(j)] = delta_max * j / (slices - 1);

  const PackedState codec{n, k};
  OdeOptions ode_opt;
  ode_opt.abs_tol = opt.ode_abs_tol;
  ode_opt.rel_tol = opt.ode_rel_tol;

  // geodesic + variational right-hand side
  auto rhs = [&m, n, k, codec](double, const Eigen::VectorXd& y) {
    FoliationNodeState s = codec.unpack(y);
    ChristoffelJet cj = christoffel_jet(m, ChartPoint{s.x, "default"});

    FoliationNodeState d;
    d.x = s.v;
    d.v.resize(n);
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += cj.gamma[l](i, j) * s.v[i] * s.v[j];
      d.v[l] = -acc;
    }
    d.dx = s.dv;
    d.dv.resize(n, k);
    for (int a = 0; a < k; ++a)
      for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double dgam = 0.0;
            for (int mm = 0; mm < n; ++mm)
              dgam += cj.dgamma[mm][l](i, j) * s.dx(mm, a);
            acc += dgam * s.v[i] * s.v[j] + 2.0 * cj.gamma[l](i, j) * s.dv(i, a) * s.v[j];
          }
        d.dv(l, a) = -acc;
      }
    return codec.pack(d);
  };

  std::vector<std::vector<FoliationNodeState>> per_node(n_nodes);
  parallel_for(n_nodes, [&](std::size_t node) {
    SurfacePointGeometry geom = surface_point_geometry(base, grid.node(node));
    ChristoffelJet cj = christoffel_jet(m, geom.point);

    FoliationNodeState s0;
    s0.x = geom.point.coords;
    s0.v = geom.normal;
    s0.dx = geom.tangents;
    s0.dv = normal_coordinate_derivatives(geom, cj.gamma);

    const double det0 = gram_det(m, s0);
    double last_ratio = 1.0;
    auto exit_domain = [&last_ratio]() -> void {
      // A Jacobian already collapsing when the chart edge is reached is a
      // caustic at the edge (the cap's cone point), not a clean exit.
      if (last_ratio < 1e-5)
        throw CausticDetected(
            "flow-map Jacobian degenerated approaching the chart edge");
      throw GeodesicExitedDomain("normal geodesic left the chart domain");
    };
    auto watch = [&](double, const Eigen::VectorXd& y) {
      FoliationNodeState s = codec.unpack(y);
      ChartPoint p{s.x, "default"};
      if (!m.in_domain(p)) exit_domain();
      last_ratio = gram_det(m, s) / det0;
      if (last_ratio < opt.caustic_det_tol)
        throw CausticDetected("flow-map Jacobian degenerated along a normal geodesic");
    };

    std::vector<FoliationNodeState> line;
    line.reserve(f.t_grid.size());
    line.push_back(s0);
    Eigen::VectorXd y = codec.pack(s0);
    for (std::size_t j = 1; j < f.t_grid.size(); ++j) {
      try {
        y = integrate_rk45(rhs, f.t_grid[j - 1], y, f.t_grid[j], ode_opt, watch);
      } catch (const GeodesicExitedDomain&) {
        throw;
      } catch (const CausticDetected&) {
        throw;
      } catch (const DomainError&) {
        exit_domain();  // an integrator stage left the chart
      }
      line.push_back(codec.unpack(y));
    }
    per_node[node] = std::move(line);
  });

  f.states.assign(f.t_grid.size(), std::vector<FoliationNodeState>(n_nodes));
  f.psi.resize(static_cast<Eigen::Index>(f.t_grid.size()),
               static_cast<Eigen::Index>(n_nodes));
  for (std::size_t j = 0; j < f.t_grid.size(); ++j)
    for (std::size_t node = 0; node < n_nodes; ++node) {
      const FoliationNodeState& s = per_node[node][j];
      const Eigen::MatrixXd g = m.components(ChartPoint{s.x, "default"});
      f.psi(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(node)) =
          std::sqrt(s.v.dot(g * s.v));
      f.states[j][node] = s;
    }
  return f;
}

NormalFoliation foliation_from_chart(const MetricField& m, const FiberGrid& grid,
                                     FiberTopology topology,
                                     const std::vector<double>& t_grid) {
  if (t_grid.size() < 2) throw InvalidParam("foliation_from_chart: need >= 2 slices");
  for (std::size_t j = 1; j < t_grid.size(); ++j)
    if (!(t_grid[j] > t_grid[j - 1]))
      throw InvalidParam("foliation_from_chart: t_grid must be strictly increasing");
  const int n = m.dim();
  const int k = n - 1;
  if (grid.axes() != k)
    throw InvalidParam("foliation_from_chart: grid axes must be n-1");

  NormalFoliation f;
  f.ambient = m;
  f.grid = grid;
  f.topology = topology;
  f.t_grid = t_grid;
  f.states.assign(t_grid.size(), std::vector<FoliationNodeState>(grid.size()));
  f.psi.resize(static_cast<Eigen::Index>(t_grid.size()),
               static_cast<Eigen::Index>(grid.size()));

  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    const double t = t_grid[j];
    for (std::size_t node = 0; node < grid.size(); ++node) {
      Eigen::VectorXd x(n);
      x[0] = t;
      x.segment(1, k) = grid.node(node);
      ChartPoint p{x, "default"};
      TensorJet jet = m.jet1(p);
      const double g_tt = jet.value(0, 0);
      if (!(g_tt > 0.0))
        throw DegenerateMetric("foliation_from_chart: g_tt not positive");
      const double lapse = std::sqrt(g_tt);

      FoliationNodeState s;
      s.x = x;
      s.v = Eigen::VectorXd::Zero(n);
      s.v[0] = 1.0 / lapse;
      s.dx = Eigen::MatrixXd::Zero(n, k);
      for (int a = 0; a < k; ++a) s.dx(a + 1, a) = 1.0;
      // d_A (e_0 / sqrt(g_tt)) = -(1/2) g_tt^{-3/2} (d_A g_tt) e_0
      s.dv = Eigen::MatrixXd::Zero(n, k);
      for (int a = 0; a < k; ++a)
        s.dv(0, a) = -0.5 * std::pow(g_tt, -1.5) * jet.d[a + 1](0, 0);

      f.states[j][node] = std::move(s);
      f.psi(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(node)) = lapse;
    }
  }

  f.mean_lapse = [m, grid](double t) {
    const int dim = m.dim();
    double acc = 0.0;
    for (std::size_t node = 0; node < grid.size(); ++node) {
      Eigen::VectorXd x(dim);
      x[0] = t;
      x.segment(1, dim - 1) = grid.node(node);
      acc += std::sqrt(m.components(ChartPoint{x, "default"})(0, 0));
    }
    return acc / static_cast<double>(grid.size());
  };
  return f;
}

SurfacePointGeometry slice_node_geometry(const NormalFoliation& f, int slice,
                                         std::size_t node) {
  const FoliationNodeState& s = f.states[static_cast<std::size_t>(slice)][node];
  ChartPoint p{s.x, "default"};
  ChristoffelJet cj = christoffel_from_derivatives(f.ambient.jet1(p));
  return geometry_from_normal_derivatives(f.ambient, p, s.dx, s.v, s.dv, cj.gamma);
}

namespace {

struct SliceNodeFields {
  SurfacePointGeometry geom;
  Eigen::MatrixXd chi;
  double theta = 0.0;
};

SliceNodeFields slice_node_fields(const NormalFoliation& f, const InitialDataSet& ids,
                                  int slice, std::size_t node) {
  SliceNodeFields out;
  out.geom = slice_node_geometry(f, slice, node);
  const Eigen::MatrixXd big_k = ids.k_tensor.value(out.geom.point);
  const Eigen::MatrixXd k_sigma =
      out.geom.tangents.transpose() * big_k * out.geom.tangents;
  out.chi = k_sigma + out.geom.second_fund;
  out.theta = (out.geom.induced_inv * out.chi).trace();
  return out;
}

}  // namespace

Eigen::MatrixXd theta_profile(const NormalFoliation& f, const InitialDataSet& ids) {
  const std::size_t n_nodes = f.grid.size();
  Eigen::MatrixXd theta(f.slices(), static_cast<Eigen::Index>(n_nodes));
  for (int j = 0; j < f.slices(); ++j) {
    parallel_for(n_nodes, [&, j](std::size_t node) {
      theta(j, static_cast<Eigen::Index>(node)) =
          slice_node_fields(f, ids, j, node).theta;
    });
  }
  return theta;
}

SliceData slice_data(const NormalFoliation& f, const InitialDataSet& ids, int slice) {
  if (f.grid.kind() != GridKind::Torus)
    throw UnsupportedTopology("slice_data: evolution fields need a torus fiber grid");
  const std::size_t size = f.grid.size();
  const int k = f.grid.axes();

  SliceData sd;
  sd.grid = f.grid;
  sd.induced.assign(size, Eigen::MatrixXd());
  sd.theta.resize(size);
  sd.chi_sq.resize(size);
  sd.scalar_sigma.resize(size);
  sd.mu_plus_j_nu.resize(size);
  sd.tr_k.resize(size);
  sd.drift.resize(size, k);

  parallel_for(size, [&](std::size_t node) {
    SliceNodeFields fields = slice_node_fields(f, ids, slice, node);
    const SurfacePointGeometry& geom = fields.geom;
    sd.induced[node] = geom.induced;
    sd.theta[node] = fields.theta;
    const Eigen::MatrixXd chi_up = geom.induced_inv * fields.chi;
    sd.chi_sq[node] = (chi_up * chi_up).trace();

    ConstraintValues cv = constraints(ids, geom.point);
    sd.mu_plus_j_nu[node] = cv.mu + cv.j_covector.dot(geom.normal);

    MetricEval ev = ids.metric.eval(geom.point);
    const Eigen::MatrixXd big_k = ids.k_tensor.value(geom.point);
    sd.tr_k[node] = (ev.g_inv * big_k).trace();

    Eigen::VectorXd omega(k);
    for (int b = 0; b < k; ++b)
      omega[b] = geom.normal.dot(big_k * geom.tangents.col(b));
    sd.drift.row(node) = (geom.induced_inv * omega).transpose();
  });

  sd.order = is_constant_field(sd.induced) ? DiscretizationOrder::Spectral
                                           : DiscretizationOrder::FD4;
  std::vector<CurvatureBundle> curv = grid_metric_curvature(f.grid, sd.induced);
  for (std::size_t i = 0; i < size; ++i) sd.scalar_sigma[i] = curv[i].scalar;
  return sd;
}

EvolutionConsistency evolution_consistency(const NormalFoliation& f,
                                           const InitialDataSet& ids) {
  if (f.slices() < 3)
    throw InvalidParam("evolution_consistency: need at least 3 slices");
  const Eigen::MatrixXd theta = theta_profile(f, ids);

  EvolutionConsistency out;
  for (int j = 1; j + 1 < f.slices(); ++j) {
    const double dt = f.t_grid[static_cast<std::size_t>(j + 1)] -
                      f.t_grid[static_cast<std::size_t>(j - 1)];
    const Eigen::VectorXd lhs = (theta.row(j + 1) - theta.row(j - 1)).transpose() / dt;
    SliceData sd = slice_data(f, ids, j);
    const Eigen::VectorXd rhs =
        evolution_rhs(sd, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(f.grid.size())));
    const double dev = (lhs - rhs).cwiseAbs().maxCoeff();
    out.per_slice.push_back(dev);
    out.times.push_back(f.t_grid[static_cast<std::size_t>(j)]);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = fn(lm), frm = fn(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_1d(const std::function<double(double)>& fn, double a, double b,
                    double tol) {
  if (a == b) return 0.0;
  const double fa = fn(a), fb = fn(b), fm = fn(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(fn, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

SplitReport verify_splitting(const NormalFoliation& f, const InitialDataSet& ids,
                             double warp_rate, double tol) {
  SplitReport rep;
  rep.warp_rate = warp_rate;
  rep.tol = tol;
  rep.gate_tol = tol * std::sqrt(static_cast<double>(f.slices()));
  rep.ricci_flat_dev = std::numeric_limits<double>::quiet_NaN();

  const std::size_t size = f.grid.size();

  // slice-mean lapse and the reparametrized times t~_j = int_0^{t_j} psi
  std::vector<double> psi_mean(static_cast<std::size_t>(f.slices()));
  for (int j = 0; j < f.slices(); ++j) psi_mean[static_cast<std::size_t>(j)] =
      f.psi.row(j).mean();
  std::vector<double> t_tilde(static_cast<std::size_t>(f.slices()), 0.0);
  if (f.mean_lapse) {
    for (int j = 1; j < f.slices(); ++j)
      t_tilde[static_cast<std::size_t>(j)] =
          t_tilde[static_cast<std::size_t>(j - 1)] +
          integrate_1d(f.mean_lapse, f.t_grid[static_cast<std::size_t>(j - 1)],
                       f.t_grid[static_cast<std::size_t>(j)], 1e-13);
  } else {
    for (int j = 1; j < f.slices(); ++j)
      t_tilde[static_cast<std::size_t>(j)] =
          t_tilde[static_cast<std::size_t>(j - 1)] +
          0.5 * (psi_mean[static_cast<std::size_t>(j - 1)] +
                 psi_mean[static_cast<std::size_t>(j)]) *
              (f.t_grid[static_cast<std::size_t>(j)] -
               f.t_grid[static_cast<std::size_t>(j - 1)]);
  }

  std::vector<Eigen::MatrixXd> h0(size);
  double theta_max = -std::numeric_limits<double>::infinity();
  double theta_min = std::numeric_limits<double>::infinity();

  for (int j = 0; j < f.slices(); ++j) {
    std::vector<double> theta_slice(size);
    std::vector<double> chi_slice(size), warp_slice(size);
    parallel_for(size, [&, j](std::size_t node) {
      SliceNodeFields fields = slice_node_fields(f, ids, j, node);
      theta_slice[node] = fields.theta;
      chi_slice[node] = fields.chi.cwiseAbs().maxCoeff();
      if (j == 0) h0[node] = fields.geom.induced;
      const double scale = std::exp(-2.0 * warp_rate * t_tilde[static_cast<std::size_t>(j)]);
      warp_slice[node] = (j == 0)
                             ? 0.0
                             : (fields.geom.induced * scale - h0[node])
                                   .cwiseAbs()
                                   .maxCoeff();
    });
    for (std::size_t node = 0; node < size; ++node) {
      theta_max = std::max(theta_max, theta_slice[node]);
      theta_min = std::min(theta_min, theta_slice[node]);
      rep.max_chi_dev = std::max(rep.max_chi_dev, chi_slice[node]);
      rep.max_warp_dev = std::max(rep.max_warp_dev, warp_slice[node]);
      rep.max_lapse_dev =
          std::max(rep.max_lapse_dev,
                   std::abs(f.psi(j, static_cast<Eigen::Index>(node)) -
                            psi_mean[static_cast<std::size_t>(j)]));
    }
  }
  rep.max_theta = std::max(std::abs(theta_max), std::abs(theta_min));

  if (f.grid.kind() == GridKind::Torus) {
    std::vector<CurvatureBundle> curv = grid_metric_curvature(f.grid, h0);
    double dev = 0.0;
    for (const CurvatureBundle& b : curv)
      dev = std::max(dev, b.ricci.cwiseAbs().maxCoeff());
    rep.ricci_flat_dev = dev;
  }

  // gates, in order
  if (rep.max_theta >= rep.gate_tol) {
    rep.reason = theta_max <= rep.gate_tol ? "interior slices outer trapped"
                 : theta_min >= -rep.gate_tol
                     ? "interior slices untrapped (theta > 0)"
                     : "slices are not marginally trapped (theta changes sign)";
  } else if (rep.max_chi_dev >= rep.gate_tol) {
    rep.reason = "chi does not vanish on slices";
  } else if (rep.max_lapse_dev >= rep.gate_tol) {
    rep.reason = "lapse is not constant on slices";
  } else if (rep.max_warp_dev >= rep.gate_tol) {
    rep.reason = "slice metrics do not match e^{2 eps t} h(0)";
  } else if (f.grid.kind() != GridKind::Torus) {
    throw UnsupportedTopology(
        "verify_splitting: fiber Ricci-flatness check implemented for torus grids only");
  } else if (rep.ricci_flat_dev >= rep.gate_tol) {
    rep.reason = "slice metric is not Ricci flat";
  }
  rep.verdict = rep.reason.empty();
  return rep;
}

GaugeDeviation gauge_deviation(const NormalFoliation& f) {
  GaugeDeviation dev;
  for (int j = 0; j < f.slices(); ++j)
    for (std::size_t node = 0; node < f.grid.size(); ++node) {
      const FoliationNodeState& s = f.states[static_cast<std::size_t>(j)][node];
      const Eigen::MatrixXd g = f.ambient.components(ChartPoint{s.x, "default"});
      dev.unit_speed = std::max(dev.unit_speed, std::abs(s.v.dot(g * s.v) - 1.0));
      const Eigen::VectorXd ip = s.dx.transpose() * g * s.v;
      dev.orthogonality = std::max(dev.orthogonality, ip.cwiseAbs().maxCoeff());
    }
  return dev;
}

}  // namespace motskit
