// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <Eigen/Dense>
#include <span>

#include "motskit/curvature.hpp"
#include "motskit/fields.hpp"

namespace motskit {

enum class DataTag { TimeSymmetric, UmbilicMinus, UmbilicPlus, General };

/// An initial data set (M, g, K). K is a symmetric 2-tensor field with the
/// same dual-number evaluation contract as the metric components.
struct InitialDataSet {
  MetricField metric;
  SymmetricTensorField k_tensor;
  DataTag tag = DataTag::General;
  /// c in K = c g when the tag is umbilic/time-symmetric; meaningless for
  /// General.
  double umbilic_factor = 0.0;
};

/// K = signed_eps * g pointwise. signed_eps in {-1, 0, +1} covers the
/// K = -eps g / K = 0 / K = +eps g data of the splitting theorems.
InitialDataSet make_umbilic_data(const MetricField& m, double signed_eps);

InitialDataSet make_initial_data(const MetricField& m, SymmetricTensorField k);

/// Energy and momentum densities at a point:
///   mu = (S + (tr K)^2 - |K|^2) / 2,   J = div K - d(tr K).
struct ConstraintValues {
  double mu = 0.0;
  Eigen::VectorXd j_covector;
  ChartPoint point;
};

ConstraintValues constraints(const InitialDataSet& ids, const ChartPoint& p);

/// J lowered against g^{-1}: |J|_g.
double momentum_norm(const InitialDataSet& ids, const ConstraintValues& c);

struct DecReport {
  bool holds = false;
  double margin = 0.0;  // min over samples of mu - |J|_g
  ChartPoint worst_point;
  double tol = 0.0;
};

/// Dominant energy condition mu >= |J| on a sample set, within tol.
DecReport dec_check(const InitialDataSet& ids, std::span<const ChartPoint> points,
                    double tol = 1e-9);

}  // namespace motskit
