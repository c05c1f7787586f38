// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/hypersurface.hpp"

#include <cmath>

#include "motskit/parallel.hpp"

namespace motskit {

Eigen::VectorXd ImmersionField::value(const Eigen::VectorXd& u) const {
  std::array<double, kMaxDim> uraw{};
  for (int a = 0; a < k_; ++a) uraw[a] = u[a];
  auto x = f0_(std::span<const double>(uraw.data(), k_));
  Eigen::VectorXd out(n_);
  for (int i = 0; i < n_; ++i) out[i] = x[i];
  return out;
}

ImmersionField::Jet ImmersionField::jet2(const Eigen::VectorXd& u) const {
  if (u.size() != k_) throw DomainError("immersion: fiber point dimension mismatch");
  std::array<double, kMaxDim> uraw{};
  for (int a = 0; a < k_; ++a) uraw[a] = u[a];
  auto seeded = seed_second(std::span<const double>(uraw.data(), k_));
  auto x = f2_(std::span<const Dual2>(seeded.data(), k_));

  Jet jet;
  jet.x.resize(n_);
  jet.dx.resize(n_, k_);
  jet.ddx.assign(k_, Eigen::MatrixXd(n_, k_));
  for (int i = 0; i < n_; ++i) {
    if (!all_finite(x[i])) throw NonFiniteDerivative("immersion jet not finite");
    jet.x[i] = x[i].val.val;
    for (int a = 0; a < k_; ++a) {
      jet.dx(i, a) = x[i].der[a].val;
      for (int b = 0; b < k_; ++b) jet.ddx[a](i, b) = x[i].der[b].der[a];
    }
  }
  return jet;
}

EmbeddedSurface::EmbeddedSurface(MetricField ambient, ImmersionField immersion,
                                 NormalChoice normal, FiberTopology topology,
                                 FiberGrid grid, std::optional<double> level_value)
    : ambient_(std::move(ambient)),
      immersion_(std::move(immersion)),
      normal_(std::move(normal)),
      topology_(topology),
      grid_(std::move(grid)),
      level_value_(level_value) {
  if (immersion_.fiber_dim() != ambient_.dim() - 1)
    throw InvalidParam("EmbeddedSurface: immersion must have codimension 1");
  if (immersion_.fiber_dim() != grid_.axes())
    throw InvalidParam("EmbeddedSurface: grid axes must match the fiber dimension");
}

EmbeddedSurface EmbeddedSurface::coordinate_level_set(const MetricField& ambient,
                                                      double value, FiberGrid grid,
                                                      NormalChoice normal) {
  const int n = ambient.dim();
  ImmersionField imm(n - 1, n, [value, n](auto u) {
    using S = std::remove_cvref_t<decltype(u[0])>;
    std::array<S, kMaxDim> x{};
    x[0] = S(value);
    for (int a = 0; a + 1 < n; ++a) x[a + 1] = u[a];
    return x;
  });
  return EmbeddedSurface(ambient, std::move(imm), std::move(normal),
                         FiberTopology::LevelSet, std::move(grid), value);
}

EmbeddedSurface EmbeddedSurface::coordinate_sphere(const MetricField& ambient,
                                                   double radius, FiberGrid grid,
                                                   NormalChoice normal) {
  const int n = ambient.dim();
  if (grid.kind() != GridKind::Sphere)
    throw InvalidParam("coordinate_sphere: needs a sphere grid");
  ImmersionField imm(n - 1, n, [radius, n](auto u) {
    using S = std::remove_cvref_t<decltype(u[0])>;
    std::array<S, kMaxDim> x{};
    // hyperspherical: polar angles u[0..n-3], azimuth u[n-2]
    S prefix = S(radius);
    for (int j = 0; j + 2 < n; ++j) {
      x[j] = prefix * cos(u[j]);
      prefix = prefix * sin(u[j]);
    }
    x[n - 2] = prefix * cos(u[n - 2]);
    x[n - 1] = prefix * sin(u[n - 2]);
    return x;
  });
  return EmbeddedSurface(ambient, std::move(imm), std::move(normal),
                         FiberTopology::Sphere, std::move(grid));
}

EmbeddedSurface EmbeddedSurface::graph_over_torus(const MetricField& ambient,
                                                  ScalarField height, FiberGrid grid,
                                                  NormalChoice normal) {
  const int n = ambient.dim();
  if (height.dim() != n - 1)
    throw InvalidParam("graph_over_torus: height field must live on the fiber");
  ImmersionField imm(n - 1, n, [height, n](auto u) {
    using S = std::remove_cvref_t<decltype(u[0])>;
    std::array<S, kMaxDim> x{};
    for (int a = 0; a + 1 < n; ++a) x[a] = u[a];
    x[n - 1] = height.eval_generic(std::span<const S>(u.data(), n - 1));
    return x;
  });
  return EmbeddedSurface(ambient, std::move(imm), std::move(normal),
                         FiberTopology::Torus, std::move(grid));
}

namespace {

Eigen::VectorXd unit_normal_up_to_sign(const Eigen::MatrixXd& g,
                                       const Eigen::MatrixXd& tangents) {
  const int k = static_cast<int>(tangents.cols());
  // rows are the tangent covectors; the normal spans their kernel
  Eigen::MatrixXd rows = tangents.transpose() * g;  // k x n
  Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
  lu.setThreshold(1e-10);
  if (lu.rank() != k)
    throw RankDeficientImmersion("immersion differential is rank deficient");
  Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() != 1)
    throw RankDeficientImmersion("normal space is not one-dimensional");
  Eigen::VectorXd nu = kernel.col(0);
  const double len = std::sqrt(nu.dot(g * nu));
  if (!(len > 0.0) || !std::isfinite(len))
    throw RankDeficientImmersion("degenerate normal");
  return nu / len;
}

Eigen::VectorXd orient_normal(const MetricField& ambient, const ChartPoint& x,
                              const Eigen::MatrixXd& g, const NormalChoice& choice,
                              Eigen::VectorXd nu) {
  if (choice.kind == NormalChoice::Kind::UserVector) {
    if (!choice.reference)
      throw InvalidParam("NormalChoice::UserVector without a reference direction");
    const Eigen::VectorXd ref = choice.reference(x);
    const double ip = nu.dot(g * ref);
    if (ip == 0.0)
      throw DomainError("normal orientation: reference direction is tangent");
    return (ip < 0.0) ? Eigen::VectorXd(-nu) : nu;
  }
  // IntoManifold: probe the domain predicate on both sides.
  double scale = 1e-6 * (1.0 + x.coords.cwiseAbs().maxCoeff());
  for (int attempt = 0; attempt < 4; ++attempt, scale *= 10.0) {
    ChartPoint plus{x.coords + scale * nu, x.chart_id};
    ChartPoint minus{x.coords - scale * nu, x.chart_id};
    const bool in_plus = ambient.in_domain(plus);
    const bool in_minus = ambient.in_domain(minus);
    if (in_plus && !in_minus) return nu;
    if (in_minus && !in_plus) return -nu;
  }
  throw DomainError(
      "normal orientation ambiguous: surface is not on the domain boundary; "
      "supply a UserVector reference direction");
}

}  // namespace

SurfacePointGeometry surface_point_geometry(const EmbeddedSurface& s,
                                            const Eigen::VectorXd& u) {
  const ImmersionField::Jet jet = s.immersion().jet2(u);
  const int n = s.ambient().dim();
  const int k = s.immersion().fiber_dim();

  SurfacePointGeometry out;
  out.point = ChartPoint{jet.x, "default"};
  s.ambient().require_in_domain(out.point);

  ChristoffelJet cj = christoffel_from_derivatives(s.ambient().jet1(out.point));

  out.tangents = jet.dx;
  out.induced = jet.dx.transpose() * cj.g * jet.dx;
  Eigen::LLT<Eigen::MatrixXd> llt(out.induced);
  if (llt.info() != Eigen::Success)
    throw RankDeficientImmersion("induced metric is not positive definite");
  out.induced_inv = llt.solve(Eigen::MatrixXd::Identity(k, k));

  Eigen::VectorXd nu = unit_normal_up_to_sign(cj.g, jet.dx);
  out.normal = orient_normal(s.ambient(), out.point, cj.g, s.normal_choice(), nu);

  // A_AB = -g(nu, dd phi_AB + Gamma(T_A, T_B))
  out.second_fund.resize(k, k);
  Eigen::VectorXd nu_flat = cj.g * out.normal;
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      Eigen::VectorXd w = jet.ddx[a].col(b);
      for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            acc += cj.gamma[l](i, j) * jet.dx(i, a) * jet.dx(j, b);
        w[l] += acc;
      }
      out.second_fund(a, b) = -nu_flat.dot(w);
      out.second_fund(b, a) = out.second_fund(a, b);
    }
  out.mean_curvature = (out.induced_inv * out.second_fund).trace();
  return out;
}

SurfacePointGeometry geometry_from_normal_derivatives(
    const MetricField& ambient, const ChartPoint& x, const Eigen::MatrixXd& tangents,
    const Eigen::VectorXd& normal, const Eigen::MatrixXd& dnormal,
    const std::vector<Eigen::MatrixXd>& gamma) {
  const int n = ambient.dim();
  const int k = static_cast<int>(tangents.cols());

  SurfacePointGeometry out;
  out.point = x;
  out.tangents = tangents;
  out.normal = normal;

  const Eigen::MatrixXd g = ambient.components(x);
  out.induced = tangents.transpose() * g * tangents;
  Eigen::LLT<Eigen::MatrixXd> llt(out.induced);
  if (llt.info() != Eigen::Success)
    throw RankDeficientImmersion("slice metric is not positive definite");
  out.induced_inv = llt.solve(Eigen::MatrixXd::Identity(k, k));

  // A_AB = g( dnu_A + Gamma(T_A, nu), T_B )
  out.second_fund.resize(k, k);
  for (int a = 0; a < k; ++a) {
    Eigen::VectorXd cov = dnormal.col(a);
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += gamma[l](i, j) * tangents(i, a) * normal[j];
      cov[l] += acc;
    }
    const Eigen::VectorXd cov_flat = g * cov;
    for (int b = 0; b < k; ++b) out.second_fund(a, b) = cov_flat.dot(tangents.col(b));
  }
  // symmetrize (exact for integrable frames; rounding otherwise)
  out.second_fund = 0.5 * (out.second_fund + out.second_fund.transpose()).eval();
  out.mean_curvature = (out.induced_inv * out.second_fund).trace();
  return out;
}

Eigen::MatrixXd normal_coordinate_derivatives(const SurfacePointGeometry& geom,
                                              const std::vector<Eigen::MatrixXd>& gamma) {
  const int n = static_cast<int>(geom.tangents.rows());
  const int k = static_cast<int>(geom.tangents.cols());
  // nabla_{T_A} nu = h^{BC} A_AB T_C (Weingarten, tangential since |nu| = 1)
  Eigen::MatrixXd weingarten =
      geom.tangents * (geom.induced_inv * geom.second_fund).transpose();
  // d_A nu = (nabla_{T_A} nu)^l - Gamma^l_ij T_A^i nu^j
  Eigen::MatrixXd dnu(n, k);
  for (int a = 0; a < k; ++a)
    for (int l = 0; l < n; ++l) {
      double corr = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          corr += gamma[l](i, j) * geom.tangents(i, a) * geom.normal[j];
      dnu(l, a) = weingarten(l, a) - corr;
    }
  return dnu;
}

NullExpansionValues null_expansion(const EmbeddedSurface& s, const InitialDataSet& ids,
                                   const Eigen::VectorXd& u) {
  NullExpansionValues out;
  out.geometry = surface_point_geometry(s, u);
  const Eigen::MatrixXd K = ids.k_tensor.value(out.geometry.point);
  const Eigen::MatrixXd k_sigma =
      out.geometry.tangents.transpose() * K * out.geometry.tangents;
  out.chi = k_sigma + out.geometry.second_fund;
  out.tr_k_sigma = (out.geometry.induced_inv * k_sigma).trace();
  out.theta = (out.geometry.induced_inv * out.chi).trace();
  return out;
}

Eigen::VectorXd theta_on_grid(const EmbeddedSurface& s, const InitialDataSet& ids) {
  const FiberGrid& grid = s.grid();
  Eigen::VectorXd theta(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    theta[static_cast<Eigen::Index>(i)] = null_expansion(s, ids, grid.node(i)).theta;
  });
  return theta;
}

const char* to_string(TrappedClass c) {
  switch (c) {
    case TrappedClass::OuterTrapped: return "OuterTrapped";
    case TrappedClass::WeaklyOuterTrapped: return "WeaklyOuterTrapped";
    case TrappedClass::MOTS: return "MOTS";
    case TrappedClass::Untrapped: return "Untrapped";
  }
  return "?";
}

TrappedClass classify(const EmbeddedSurface& s, const InitialDataSet& ids, double tol) {
  const Eigen::VectorXd theta = theta_on_grid(s, ids);
  const double max_theta = theta.maxCoeff();
  const double min_theta = theta.minCoeff();
  const double max_abs = theta.cwiseAbs().maxCoeff();
  if (max_abs < tol) return TrappedClass::MOTS;
  if (max_theta < -tol) return TrappedClass::OuterTrapped;
  if (max_theta <= tol && min_theta < -tol) return TrappedClass::WeaklyOuterTrapped;
  return TrappedClass::Untrapped;
}

}  // namespace motskit
