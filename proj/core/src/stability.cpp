// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/stability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "motskit/parallel.hpp"

namespace motskit {

namespace {

Eigen::MatrixXd build_operator(const FiberGrid& grid,
                               const std::vector<Eigen::MatrixXd>& induced,
                               const Eigen::VectorXd& potential,
                               const Eigen::MatrixXd& drift,
                               DiscretizationOrder order) {
  Eigen::MatrixXd op = -laplace_beltrami(grid, induced, order);
  if (drift.size() != 0 && drift.cwiseAbs().maxCoeff() > 0.0)
    op += drift_operator(grid, drift, order);
  op += Eigen::MatrixXd(potential.asDiagonal());
  return op;
}

}  // namespace

StabilityAssembly assemble_from_coefficients(const FiberGrid& grid,
                                             const Eigen::MatrixXd& induced_constant,
                                             const Eigen::VectorXd& potential,
                                             const Eigen::MatrixXd& drift,
                                             DiscretizationOrder order) {
  if (grid.kind() != GridKind::Torus)
    throw UnsupportedTopology("stability operator requires a torus fiber grid");
  StabilityAssembly a;
  a.grid = grid;
  a.order = order;
  a.induced.assign(grid.size(), induced_constant);
  a.potential = potential;
  a.drift = drift.size() == 0
                ? Eigen::MatrixXd::Zero(grid.size(), grid.axes())
                : drift;
  a.op = build_operator(a.grid, a.induced, a.potential, a.drift, order);
  return a;
}

StabilityAssembly assemble_stability_operator(const EmbeddedSurface& surface,
                                              const InitialDataSet& ids,
                                              const StabilityOptions& opt) {
  if (surface.grid().kind() != GridKind::Torus)
    throw UnsupportedTopology("stability operator requires a torus fiber grid");

  const int k = surface.grid().axes();
  FiberGrid grid = opt.grid_points > 0 ? FiberGrid::torus(k, opt.grid_points)
                                       : surface.grid();
  const std::size_t size = grid.size();

  StabilityAssembly a;
  a.grid = grid;
  a.induced.assign(size, Eigen::MatrixXd());
  a.potential.resize(size);
  a.drift.resize(size, k);

  // Per-node surface data; the grid Laplacian pieces come afterwards.
  parallel_for(size, [&](std::size_t i) {
    const Eigen::VectorXd u = grid.node(i);
    NullExpansionValues nev = null_expansion(surface, ids, u);
    const SurfacePointGeometry& geom = nev.geometry;
    a.induced[i] = geom.induced;

    // |chi|^2 = chi_AB chi_CD h^{AC} h^{BD}
    const Eigen::MatrixXd chi_up = geom.induced_inv * nev.chi;
    const double chi_sq = (chi_up * chi_up).trace();

    ConstraintValues cv = constraints(ids, geom.point);
    const double mu_j = cv.mu + cv.j_covector.dot(geom.normal);

    // X^A = h^{AB} K(nu, T_B)
    const Eigen::MatrixXd big_k = ids.k_tensor.value(geom.point);
    Eigen::VectorXd omega(k);
    for (int b = 0; b < k; ++b)
      omega[b] = geom.normal.dot(big_k * geom.tangents.col(b));
    const Eigen::VectorXd x_up = geom.induced_inv * omega;
    a.drift.row(i) = x_up.transpose();

    // P = S_Sigma/2 - (mu + J(nu)) - |chi|^2/2 + div X - |X|^2
    // (S_Sigma and div X need the whole grid; filled below)
    a.potential[i] = -mu_j - 0.5 * chi_sq - omega.dot(x_up);
  });

  a.order = (opt.order == DiscretizationOrder::Spectral &&
             is_constant_field(a.induced, opt.constant_metric_tol))
                ? DiscretizationOrder::Spectral
                : DiscretizationOrder::FD4;

  // S_Sigma from grid samples of the induced metric.
  std::vector<CurvatureBundle> slice_curv = grid_metric_curvature(grid, a.induced);
  for (std::size_t i = 0; i < size; ++i)
    a.potential[i] += 0.5 * slice_curv[i].scalar;

  if (a.drift.cwiseAbs().maxCoeff() > 0.0) {
    const Eigen::VectorXd div_x = grid_divergence(grid, a.induced, a.drift, a.order);
    a.potential += div_x;
  }

  a.op = build_operator(grid, a.induced, a.potential, a.drift, a.order);
  return a;
}

PrincipalEig principal_eigenvalue(const StabilityAssembly& assembly) {
  const Eigen::Index size = assembly.op.rows();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(assembly.op, true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("principal_eigenvalue: eigensolver failed");

  PrincipalEig out;
  out.spectrum.resize(static_cast<std::size_t>(size));
  for (Eigen::Index i = 0; i < size; ++i)
    out.spectrum[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  std::sort(out.spectrum.begin(), out.spectrum.end(),
            [](std::complex<double> a, std::complex<double> b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });

  double min_re = out.spectrum.front().real();
  // Tie-break among near-minimal real parts by |Im|.
  Eigen::Index pick = -1;
  double best_im = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < size; ++i) {
    const std::complex<double> ev = solver.eigenvalues()[i];
    if (ev.real() <= min_re + 1e-10 && std::abs(ev.imag()) < best_im) {
      best_im = std::abs(ev.imag());
      pick = i;
    }
  }
  if (pick < 0 || best_im >= 1e-8)
    throw ComplexPrincipal(
        "principal eigenvalue has |Im| = " + std::to_string(best_im) +
        "; discretization too coarse for a real principal eigenvalue");
  out.lambda1 = solver.eigenvalues()[pick].real();

  // De-phase the eigenvector and take the real part.
  Eigen::VectorXcd vc = solver.eigenvectors().col(pick);
  Eigen::Index imax = 0;
  vc.cwiseAbs().maxCoeff(&imax);
  vc *= std::conj(vc[imax]) / std::abs(vc[imax]);
  Eigen::VectorXd v = vc.real();

  if (v.mean() < 0.0) v = -v;
  const double vmax = v.maxCoeff();
  if (!(vmax > 0.0))
    throw NonPositiveEigenfunction("principal eigenfunction has no positive part");
  v /= vmax;
  if (v.minCoeff() <= -1e-8)
    throw NonPositiveEigenfunction(
        "principal eigenfunction is not sign-definite (min = " +
        std::to_string(v.minCoeff()) + ")");

  out.residual = (assembly.op * v - out.lambda1 * v).cwiseAbs().maxCoeff();
  out.eigenfunction = v.cwiseMax(0.0);  // clamp the -1e-8 dust for reporting
  return out;
}

Eigen::VectorXd evolution_rhs(const SliceData& slice, const Eigen::VectorXd& psi) {
  const std::size_t size = slice.grid.size();
  if (static_cast<std::size_t>(psi.size()) != size)
    throw InvalidParam("evolution_rhs: psi has wrong grid size");

  const Eigen::MatrixXd lap = laplace_beltrami(slice.grid, slice.induced, slice.order);
  Eigen::VectorXd rhs = -(lap * psi);

  Eigen::VectorXd x_sq = Eigen::VectorXd::Zero(size);
  const bool has_drift = slice.drift.size() != 0 && slice.drift.cwiseAbs().maxCoeff() > 0.0;
  if (has_drift) {
    rhs += drift_operator(slice.grid, slice.drift, slice.order) * psi;
    const Eigen::VectorXd div_x =
        grid_divergence(slice.grid, slice.induced, slice.drift, slice.order);
    for (std::size_t i = 0; i < size; ++i) {
      const Eigen::VectorXd x_up = slice.drift.row(i).transpose();
      x_sq[i] = x_up.dot(slice.induced[i] * x_up);
    }
    rhs += (div_x - x_sq).asDiagonal() * psi;
  }

  // (Q - theta^2/2 + theta tr K) psi with Q = S/2 - (mu+J(nu)) - |chi|^2/2
  Eigen::VectorXd q = 0.5 * slice.scalar_sigma - slice.mu_plus_j_nu - 0.5 * slice.chi_sq;
  Eigen::VectorXd zero_order =
      q - 0.5 * slice.theta.cwiseProduct(slice.theta) + slice.theta.cwiseProduct(slice.tr_k);
  rhs += zero_order.asDiagonal() * psi;
  return rhs;
}

}  // namespace motskit
