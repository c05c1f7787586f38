// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "motskit/curvature.hpp"
#include "motskit/errors.hpp"

namespace motskit {

enum class GridKind { Torus, Sphere };

enum class DiscretizationOrder { Spectral, FD4 };

/// Deterministic sample grid over a closed fiber: either a uniform periodic
/// grid on [0,2pi)^k (torus) or a lat-long grid with poles excluded (sphere).
class FiberGrid {
 public:
  static FiberGrid torus(int axes, int points_per_axis);
  static FiberGrid torus(const std::vector<int>& shape);
  /// Lat-long grid on S^k: polar angles at pi(i+1/2)/N (poles excluded),
  /// azimuth uniform on [0,2pi).
  static FiberGrid sphere(const std::vector<int>& shape);

  GridKind kind() const { return kind_; }
  int axes() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t size() const { return size_; }

  /// Fiber coordinates of node `idx` (row-major over axes).
  Eigen::VectorXd node(std::size_t idx) const;
  /// Multi-index of node `idx`.
  std::vector<int> multi_index(std::size_t idx) const;
  std::size_t flat_index(const std::vector<int>& mi) const;

 private:
  GridKind kind_ = GridKind::Torus;
  std::vector<int> shape_;
  std::size_t size_ = 0;
};

// --- periodic differentiation matrices on [0,2pi), N even ------------------

/// Fourier (spectral) differentiation matrices in Trefethen's closed form.
Eigen::MatrixXd fourier_diff1(int n_points);
Eigen::MatrixXd fourier_diff2(int n_points);

/// Periodic 4th-order central finite-difference matrices.
Eigen::MatrixXd fd4_diff1(int n_points);
Eigen::MatrixXd fd4_diff2(int n_points);

/// Embeds a one-axis operator into the full torus-grid node space
/// (identity on the other axes).
Eigen::MatrixXd axis_operator(const FiberGrid& grid, int axis,
                              const Eigen::MatrixXd& one_dim_op);

/// First-derivative operator along an axis for the requested order.
Eigen::MatrixXd grid_diff1(const FiberGrid& grid, int axis, DiscretizationOrder order);
/// Pure second derivative along an axis.
Eigen::MatrixXd grid_diff2(const FiberGrid& grid, int axis, DiscretizationOrder order);

/// Laplace-Beltrami operator for a metric sampled per node, in divergence
/// form (1/sqrt h) d_A (sqrt h h^{AB} d_B .). `h_nodes` is one k x k matrix
/// per node. If the metric is constant across nodes the constant-coefficient
/// assembly Sum h^{AB} D_A D_B is used (with true second-derivative stencils
/// on the diagonal).
Eigen::MatrixXd laplace_beltrami(const FiberGrid& grid,
                                 const std::vector<Eigen::MatrixXd>& h_nodes,
                                 DiscretizationOrder order);

/// Directional-derivative operator 2 <X, grad .> = 2 X^A d_A for a
/// contravariant drift field sampled per node (size x k).
Eigen::MatrixXd drift_operator(const FiberGrid& grid, const Eigen::MatrixXd& x_field,
                               DiscretizationOrder order);

/// Divergence of a contravariant vector field per node:
/// (1/sqrt h) d_A (sqrt h X^A).
Eigen::VectorXd grid_divergence(const FiberGrid& grid,
                                const std::vector<Eigen::MatrixXd>& h_nodes,
                                const Eigen::MatrixXd& x_field,
                                DiscretizationOrder order);

/// Curvature of a metric known only through node samples: components are
/// differentiated spectrally across the grid, then fed to the shared
/// curvature assembly. Returns one bundle per node.
std::vector<CurvatureBundle> grid_metric_curvature(
    const FiberGrid& grid, const std::vector<Eigen::MatrixXd>& h_nodes);

/// Uniform quadrature weight (2pi/N)^k per node times sqrt(det h) per node.
Eigen::VectorXd grid_measure(const FiberGrid& grid,
                             const std::vector<Eigen::MatrixXd>& h_nodes);

/// True when all node matrices agree within an absolute tolerance.
bool is_constant_field(const std::vector<Eigen::MatrixXd>& values, double tol = 1e-12);

}  // namespace motskit
