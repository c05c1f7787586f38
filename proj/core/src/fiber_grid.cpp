// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/fiber_grid.hpp"

#include <cmath>
#include <numbers>

namespace motskit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FiberGrid FiberGrid::torus(int axes, int points_per_axis) {
  return torus(std::vector<int>(static_cast<std::size_t>(axes), points_per_axis));
}

FiberGrid FiberGrid::torus(const std::vector<int>& shape) {
  if (shape.empty()) throw InvalidParam("FiberGrid::torus: empty shape");
  FiberGrid g;
  g.kind_ = GridKind::Torus;
  g.shape_ = shape;
  g.size_ = 1;
  for (int n : shape) {
    if (n < 4 || n % 2 != 0)
      throw InvalidParam("FiberGrid::torus: axis sizes must be even and >= 4");
    g.size_ *= static_cast<std::size_t>(n);
  }
  return g;
}

FiberGrid FiberGrid::sphere(const std::vector<int>& shape) {
  if (shape.size() < 2)
    throw InvalidParam("FiberGrid::sphere: need at least (polar, azimuth) axes");
  FiberGrid g;
  g.kind_ = GridKind::Sphere;
  g.shape_ = shape;
  g.size_ = 1;
  for (int n : shape) {
    if (n < 4) throw InvalidParam("FiberGrid::sphere: axis sizes must be >= 4");
    g.size_ *= static_cast<std::size_t>(n);
  }
  return g;
}

std::vector<int> FiberGrid::multi_index(std::size_t idx) const {
  std::vector<int> mi(shape_.size());
  for (int a = axes() - 1; a >= 0; --a) {
    mi[a] = static_cast<int>(idx % static_cast<std::size_t>(shape_[a]));
    idx /= static_cast<std::size_t>(shape_[a]);
  }
  return mi;
}

std::size_t FiberGrid::flat_index(const std::vector<int>& mi) const {
  std::size_t idx = 0;
  for (int a = 0; a < axes(); ++a)
    idx = idx * static_cast<std::size_t>(shape_[a]) + static_cast<std::size_t>(mi[a]);
  return idx;
}

Eigen::VectorXd FiberGrid::node(std::size_t idx) const {
  const std::vector<int> mi = multi_index(idx);
  Eigen::VectorXd u(axes());
  if (kind_ == GridKind::Torus) {
    for (int a = 0; a < axes(); ++a) u[a] = kTwoPi * mi[a] / shape_[a];
  } else {
    // polar angles first, azimuth last
    for (int a = 0; a + 1 < axes(); ++a)
      u[a] = std::numbers::pi * (mi[a] + 0.5) / shape_[a];
    u[axes() - 1] = kTwoPi * mi[axes() - 1] / shape_[axes() - 1];
  }
  return u;
}

Eigen::MatrixXd fourier_diff1(int n) {
  if (n < 4 || n % 2 != 0) throw InvalidParam("fourier_diff1: N must be even, >= 4");
  const double h = kTwoPi / n;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int k = i - j;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = 0.5 * sign / std::tan(0.5 * k * h);
    }
  return d;
}

Eigen::MatrixXd fourier_diff2(int n) {
  if (n < 4 || n % 2 != 0) throw InvalidParam("fourier_diff2: N must be even, >= 4");
  const double h = kTwoPi / n;
  Eigen::MatrixXd d(n, n);
  const double diag = -std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        d(i, j) = diag;
        continue;
      }
      const int k = i - j;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const double s = std::sin(0.5 * k * h);
      d(i, j) = -sign / (2.0 * s * s);
    }
  return d;
}

Eigen::MatrixXd fd4_diff1(int n) {
  if (n < 6) throw InvalidParam("fd4_diff1: N must be >= 6");
  const double h = kTwoPi / n;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, (i + 1) % n) += 8.0;
    d(i, (i + 2) % n) += -1.0;
    d(i, (i - 1 + n) % n) += -8.0;
    d(i, (i - 2 + n) % n) += 1.0;
  }
  return d / (12.0 * h);
}

Eigen::MatrixXd fd4_diff2(int n) {
  if (n < 6) throw InvalidParam("fd4_diff2: N must be >= 6");
  const double h = kTwoPi / n;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) += -30.0;
    d(i, (i + 1) % n) += 16.0;
    d(i, (i + 2) % n) += -1.0;
    d(i, (i - 1 + n) % n) += 16.0;
    d(i, (i - 2 + n) % n) += -1.0;
  }
  return d / (12.0 * h * h);
}

Eigen::MatrixXd axis_operator(const FiberGrid& grid, int axis,
                              const Eigen::MatrixXd& op) {
  if (grid.kind() != GridKind::Torus)
    throw UnsupportedTopology("axis_operator: differentiation requires a torus grid");
  const std::size_t size = grid.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size, size);
  // stride of the axis in row-major layout
  std::size_t stride = 1;
  for (int a = grid.axes() - 1; a > axis; --a) stride *= grid.shape()[a];
  const std::size_t n_axis = grid.shape()[axis];
  const std::size_t block = stride * n_axis;
  for (std::size_t base = 0; base < size; ++base) {
    if ((base / stride) % n_axis != 0) continue;  // visit each 1-d line once
    for (std::size_t i = 0; i < n_axis; ++i)
      for (std::size_t j = 0; j < n_axis; ++j)
        out(base + i * stride, base + j * stride) = op(i, j);
  }
  (void)block;
  return out;
}

Eigen::MatrixXd grid_diff1(const FiberGrid& grid, int axis, DiscretizationOrder order) {
  const int n = grid.shape()[axis];
  return axis_operator(grid, axis,
                       order == DiscretizationOrder::Spectral ? fourier_diff1(n)
                                                              : fd4_diff1(n));
}

Eigen::MatrixXd grid_diff2(const FiberGrid& grid, int axis, DiscretizationOrder order) {
  const int n = grid.shape()[axis];
  return axis_operator(grid, axis,
                       order == DiscretizationOrder::Spectral ? fourier_diff2(n)
                                                              : fd4_diff2(n));
}

bool is_constant_field(const std::vector<Eigen::MatrixXd>& values, double tol) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (((values[i] - values[0]).array().abs() > tol).any()) return false;
  return true;
}

Eigen::MatrixXd laplace_beltrami(const FiberGrid& grid,
                                 const std::vector<Eigen::MatrixXd>& h_nodes,
                                 DiscretizationOrder order) {
  if (h_nodes.size() != grid.size())
    throw InvalidParam("laplace_beltrami: one metric per node required");
  const int k = grid.axes();
  const std::size_t size = grid.size();

  if (is_constant_field(h_nodes)) {
    const Eigen::MatrixXd h_inv = h_nodes[0].inverse();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(size, size);
    for (int a = 0; a < k; ++a) {
      lap += h_inv(a, a) * grid_diff2(grid, a, order);
      for (int b = a + 1; b < k; ++b)
        if (h_inv(a, b) != 0.0)
          lap += 2.0 * h_inv(a, b) *
                 (grid_diff1(grid, a, order) * grid_diff1(grid, b, order));
    }
    return lap;
  }

  // divergence form with variable coefficients
  Eigen::VectorXd sqrt_h(size);
  std::vector<Eigen::MatrixXd> h_inv(size);
  for (std::size_t i = 0; i < size; ++i) {
    sqrt_h[i] = std::sqrt(h_nodes[i].determinant());
    h_inv[i] = h_nodes[i].inverse();
  }
  std::vector<Eigen::MatrixXd> d1(k);
  for (int a = 0; a < k; ++a) d1[a] = grid_diff1(grid, a, order);

  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(size, size);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Eigen::VectorXd coeff(size);
      for (std::size_t i = 0; i < size; ++i) coeff[i] = sqrt_h[i] * h_inv[i](a, b);
      lap += d1[a] * coeff.asDiagonal() * d1[b];
    }
  return sqrt_h.cwiseInverse().asDiagonal() * lap;
}

Eigen::MatrixXd drift_operator(const FiberGrid& grid, const Eigen::MatrixXd& x_field,
                               DiscretizationOrder order) {
  if (static_cast<std::size_t>(x_field.rows()) != grid.size() ||
      x_field.cols() != grid.axes())
    throw InvalidParam("drift_operator: X field must be size x axes");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(grid.size(), grid.size());
  for (int a = 0; a < grid.axes(); ++a)
    out += (2.0 * x_field.col(a)).asDiagonal() * grid_diff1(grid, a, order);
  return out;
}

Eigen::VectorXd grid_divergence(const FiberGrid& grid,
                                const std::vector<Eigen::MatrixXd>& h_nodes,
                                const Eigen::MatrixXd& x_field,
                                DiscretizationOrder order) {
  const std::size_t size = grid.size();
  Eigen::VectorXd sqrt_h(size);
  for (std::size_t i = 0; i < size; ++i)
    sqrt_h[i] = std::sqrt(h_nodes[i].determinant());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(size);
  for (int a = 0; a < grid.axes(); ++a) {
    Eigen::VectorXd weighted = sqrt_h.array() * x_field.col(a).array();
    acc += grid_diff1(grid, a, order) * weighted;
  }
  return acc.array() / sqrt_h.array();
}

std::vector<CurvatureBundle> grid_metric_curvature(
    const FiberGrid& grid, const std::vector<Eigen::MatrixXd>& h_nodes) {
  if (grid.kind() != GridKind::Torus)
    throw UnsupportedTopology("grid_metric_curvature: torus grids only");
  const int k = grid.axes();
  const std::size_t size = grid.size();

  // One grid function per independent component.
  std::vector<Eigen::MatrixXd> d1(k), d2(k);
  for (int a = 0; a < k; ++a) {
    d1[a] = grid_diff1(grid, a, DiscretizationOrder::Spectral);
    d2[a] = grid_diff2(grid, a, DiscretizationOrder::Spectral);
  }

  // comp[(i,j)] -> vector over nodes
  std::vector<std::vector<Eigen::VectorXd>> comp(k, std::vector<Eigen::VectorXd>(k));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Eigen::VectorXd v(size);
      for (std::size_t nidx = 0; nidx < size; ++nidx) v[nidx] = h_nodes[nidx](i, j);
      comp[i][j] = v;
    }

  auto comp_at = [&](int i, int j) -> const Eigen::VectorXd& {
    return (i <= j) ? comp[i][j] : comp[j][i];
  };

  std::vector<std::vector<Eigen::VectorXd>> dcomp(
      k, std::vector<Eigen::VectorXd>(k * k));
  std::vector<std::vector<Eigen::VectorXd>> ddcomp(
      k * k, std::vector<Eigen::VectorXd>(k * k));
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) dcomp[a][i * k + j] = d1[a] * comp_at(i, j);
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b)
      for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
          ddcomp[a * k + b][i * k + j] =
              (a == b) ? (d2[a] * comp_at(i, j)) : (d1[a] * dcomp[b][i * k + j]);

  std::vector<CurvatureBundle> out(size);
  for (std::size_t nidx = 0; nidx < size; ++nidx) {
    TensorJet jet;
    jet.value = h_nodes[nidx];
    jet.d.assign(k, Eigen::MatrixXd(k, k));
    jet.dd.assign(k, std::vector<Eigen::MatrixXd>(k, Eigen::MatrixXd(k, k)));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const int lo = std::min(i, j), hi = std::max(i, j);
        for (int a = 0; a < k; ++a) {
          jet.d[a](i, j) = dcomp[a][lo * k + hi][nidx];
          for (int b = 0; b < k; ++b) {
            const int alo = std::min(a, b), ahi = std::max(a, b);
            jet.dd[a][b](i, j) = ddcomp[alo * k + ahi][lo * k + hi][nidx];
          }
        }
      }
    out[nidx] = curvature_from_derivatives(jet);
  }
  return out;
}

Eigen::VectorXd grid_measure(const FiberGrid& grid,
                             const std::vector<Eigen::MatrixXd>& h_nodes) {
  if (grid.kind() != GridKind::Torus)
    throw UnsupportedTopology("grid_measure: torus grids only");
  double cell = 1.0;
  for (int n : grid.shape()) cell *= kTwoPi / n;
  Eigen::VectorXd w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    w[i] = cell * std::sqrt(h_nodes[i].determinant());
  return w;
}

}  // namespace motskit
