// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "motskit/fields.hpp"

namespace motskit {

/// Rank-4 tensor R^l_{kij} stored dense, one upper index.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim) : n_(dim), v_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const { return n_; }
  double& operator()(int l, int k, int i, int j) {
    return v_[((static_cast<std::size_t>(l) * n_ + k) * n_ + i) * n_ + j];
  }
  double operator()(int l, int k, int i, int j) const {
    return v_[((static_cast<std::size_t>(l) * n_ + k) * n_ + i) * n_ + j];
  }

 private:
  int n_ = 0;
  std::vector<double> v_;
};

/// Christoffel symbols and their first coordinate derivatives.
struct ChristoffelJet {
  Eigen::MatrixXd g, g_inv;
  std::vector<Eigen::MatrixXd> gamma;                 // gamma[k](i,j) = Gamma^k_ij
  std::vector<std::vector<Eigen::MatrixXd>> dgamma;   // dgamma[m][k](i,j) = del_m Gamma^k_ij
};

/// Curvature quantities at a point.
///
/// Sign conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
/// nabla_[X,Y] Z with R(d_i, d_j) d_k = R^l_{kij} d_l, and Ricci(Y,Z) is the
/// trace of X -> R(X,Y)Z. Hyperbolic n-space then has S = -n(n-1).
struct CurvatureBundle {
  Eigen::MatrixXd g, g_inv;
  std::vector<Eigen::MatrixXd> gamma;  // Gamma^k_ij
  Tensor4 riemann;                     // R^l_{kij}
  Eigen::MatrixXd ricci;
  double scalar = 0.0;

  /// Fully lowered Riemann tensor R_{lkij} = g_{lm} R^m_{kij}.
  Tensor4 lowered_riemann() const;
};

/// Assemble Gamma, Riemann, Ricci, S from metric values and derivatives.
/// Shared by the dual-number path, the finite-difference oracle, and the
/// grid-sampled slice-metric pipeline.
CurvatureBundle curvature_from_derivatives(const TensorJet& jet);

ChristoffelJet christoffel_from_derivatives(const TensorJet& jet);

/// Curvature via exact second-order forward-mode differentiation of g.
CurvatureBundle curvature(const MetricField& m, const ChartPoint& p);

/// Christoffels and their derivatives (geodesic/variational right-hand sides).
ChristoffelJet christoffel_jet(const MetricField& m, const ChartPoint& p);

/// Sectional curvature of the plane spanned by two tangent vectors.
double sectional_curvature(const MetricField& m, const ChartPoint& p,
                           const Eigen::VectorXd& x, const Eigen::VectorXd& y);

double sectional_curvature(const CurvatureBundle& b, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

/// Same quantities via 4th-order central finite differences of the metric
/// components; the test-side oracle for the dual-number path.
CurvatureBundle fd_curvature_oracle(const MetricField& m, const ChartPoint& p,
                                    double step);

}  // namespace motskit
