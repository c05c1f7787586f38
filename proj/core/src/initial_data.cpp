// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/initial_data.hpp"

#include <cmath>

namespace motskit {

InitialDataSet make_umbilic_data(const MetricField& m, double signed_eps) {
  if (signed_eps != -1.0 && signed_eps != 0.0 && signed_eps != 1.0)
    throw InvalidParam("make_umbilic_data: signed_eps must be -1, 0 or +1");
  const int n = m.dim();
  InitialDataSet ids;
  ids.metric = m;
  ids.k_tensor = SymmetricTensorField(
      n, [g = m.component_field(), signed_eps](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        SymMat<S> k = g.template eval_components<S>(x);
        for (auto& entry : k.a) entry = entry * signed_eps;
        return k;
      });
  ids.tag = signed_eps == 0.0  ? DataTag::TimeSymmetric
            : signed_eps < 0.0 ? DataTag::UmbilicMinus
                               : DataTag::UmbilicPlus;
  ids.umbilic_factor = signed_eps;
  return ids;
}

InitialDataSet make_initial_data(const MetricField& m, SymmetricTensorField k) {
  if (k.dim() != m.dim())
    throw InvalidParam("make_initial_data: K dimension mismatch");
  InitialDataSet ids;
  ids.metric = m;
  ids.k_tensor = std::move(k);
  ids.tag = DataTag::General;
  return ids;
}

ConstraintValues constraints(const InitialDataSet& ids, const ChartPoint& p) {
  const int n = ids.metric.dim();
  CurvatureBundle bundle = curvature(ids.metric, p);
  TensorJet kjet = ids.k_tensor.jet1(p);

  const Eigen::MatrixXd& ginv = bundle.g_inv;
  const Eigen::MatrixXd& K = kjet.value;

  const Eigen::MatrixXd K_up = ginv * K;  // K^i_j
  const double tr_k = K_up.trace();
  const double k_sq = (K_up * K_up).trace();  // |K|^2 = K^i_j K^j_i

  ConstraintValues out;
  out.point = p;
  out.mu = 0.5 * (bundle.scalar + tr_k * tr_k - k_sq);

  // d_j g^{ik} = -g^{ia} (d_j g_ab) g^{bk}; needed for d(tr K).
  TensorJet gjet = ids.metric.jet1(p);
  out.j_covector = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    // (div K)_j = g^{ik} (d_i K_kj - Gamma^m_ik K_mj - Gamma^m_ij K_km)
    double div_kj = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double cov = kjet.d[i](k, j);
        for (int m = 0; m < n; ++m)
          cov -= bundle.gamma[m](i, k) * K(m, j) + bundle.gamma[m](i, j) * K(k, m);
        div_kj += ginv(i, k) * cov;
      }
    const Eigen::MatrixXd dginv_j = -ginv * gjet.d[j] * ginv;
    const double dtr_j =
        (dginv_j.array() * K.array()).sum() + (ginv.array() * kjet.d[j].array()).sum();
    out.j_covector[j] = div_kj - dtr_j;
  }
  if (!std::isfinite(out.mu) || !out.j_covector.allFinite())
    throw NonFiniteDerivative("constraints: non-finite mu or J");
  return out;
}

double momentum_norm(const InitialDataSet& ids, const ConstraintValues& c) {
  MetricEval ev = ids.metric.eval(c.point);
  return std::sqrt(c.j_covector.dot(ev.g_inv * c.j_covector));
}

DecReport dec_check(const InitialDataSet& ids, std::span<const ChartPoint> points,
                    double tol) {
  if (points.empty()) throw InvalidParam("dec_check: empty sample set");
  DecReport report;
  report.tol = tol;
  report.margin = std::numeric_limits<double>::infinity();
  for (const ChartPoint& p : points) {
    ConstraintValues c = constraints(ids, p);
    const double local = c.mu - momentum_norm(ids, c);
    if (local < report.margin) {
      report.margin = local;
      report.worst_point = p;
    }
  }
  report.holds = report.margin >= -tol;
  return report;
}

}  // namespace motskit
