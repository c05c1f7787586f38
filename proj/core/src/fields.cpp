// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/fields.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace motskit {

void check_point(const ChartPoint& p, int expected_dim) {
  if (p.dim() != expected_dim)
    throw DomainError("chart point has dimension " + std::to_string(p.dim()) +
                      ", expected " + std::to_string(expected_dim));
  for (int i = 0; i < p.dim(); ++i)
    if (!std::isfinite(p.coords[i]))
      throw DomainError("chart point has non-finite coordinate");
}

namespace {

template <class S>
std::array<S, kMaxDim> to_array(const Eigen::VectorXd& x) {
  std::array<S, kMaxDim> out{};
  for (int i = 0; i < x.size(); ++i) out[i] = S(x[i]);
  return out;
}

}  // namespace

Eigen::MatrixXd SymmetricTensorField::value(const ChartPoint& p) const {
  check_point(p, dim_);
  auto x = to_array<double>(p.coords);
  SymMat<double> m = f0_(std::span<const double>(x.data(), dim_));
  Eigen::MatrixXd out(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(i, j) = m(i, j);
  return out;
}

TensorJet SymmetricTensorField::jet1(const ChartPoint& p) const {
  check_point(p, dim_);
  std::array<double, kMaxDim> xraw{};
  for (int i = 0; i < dim_; ++i) xraw[i] = p.coords[i];
  auto x = seed_first(std::span<const double>(xraw.data(), dim_));
  SymMat<Dual1> m = f1_(std::span<const Dual1>(x.data(), dim_));

  TensorJet jet;
  jet.value.resize(dim_, dim_);
  jet.d.assign(dim_, Eigen::MatrixXd(dim_, dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const Dual1& c = m(i, j);
      if (!all_finite(c)) throw NonFiniteDerivative("tensor jet1 not finite");
      jet.value(i, j) = c.val;
      for (int k = 0; k < dim_; ++k) jet.d[k](i, j) = c.der[k];
    }
  return jet;
}

TensorJet SymmetricTensorField::jet2(const ChartPoint& p) const {
  check_point(p, dim_);
  std::array<double, kMaxDim> xraw{};
  for (int i = 0; i < dim_; ++i) xraw[i] = p.coords[i];
  auto x = seed_second(std::span<const double>(xraw.data(), dim_));
  SymMat<Dual2> m = f2_(std::span<const Dual2>(x.data(), dim_));

  TensorJet jet;
  jet.value.resize(dim_, dim_);
  jet.d.assign(dim_, Eigen::MatrixXd(dim_, dim_));
  jet.dd.assign(dim_, std::vector<Eigen::MatrixXd>(dim_, Eigen::MatrixXd(dim_, dim_)));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const Dual2& c = m(i, j);
      if (!all_finite(c)) throw NonFiniteDerivative("tensor jet2 not finite");
      jet.value(i, j) = c.val.val;
      for (int k = 0; k < dim_; ++k) {
        jet.d[k](i, j) = c.der[k].val;
        for (int l = 0; l < dim_; ++l) jet.dd[k][l](i, j) = c.der[l].der[k];
      }
    }
  return jet;
}

double ScalarField::value(const ChartPoint& p) const {
  check_point(p, dim_);
  auto x = to_array<double>(p.coords);
  return f0_(std::span<const double>(x.data(), dim_));
}

Eigen::VectorXd ScalarField::gradient(const ChartPoint& p) const {
  check_point(p, dim_);
  std::array<double, kMaxDim> xraw{};
  for (int i = 0; i < dim_; ++i) xraw[i] = p.coords[i];
  auto x = seed_first(std::span<const double>(xraw.data(), dim_));
  Dual1 v = f1_(std::span<const Dual1>(x.data(), dim_));
  if (!all_finite(v)) throw NonFiniteDerivative("scalar gradient not finite");
  Eigen::VectorXd g(dim_);
  for (int i = 0; i < dim_; ++i) g[i] = v.der[i];
  return g;
}

void ScalarField::second_derivatives(const ChartPoint& p, double& value,
                                     Eigen::VectorXd& grad,
                                     Eigen::MatrixXd& hess) const {
  check_point(p, dim_);
  std::array<double, kMaxDim> xraw{};
  for (int i = 0; i < dim_; ++i) xraw[i] = p.coords[i];
  auto x = seed_second(std::span<const double>(xraw.data(), dim_));
  Dual2 v = f2_(std::span<const Dual2>(x.data(), dim_));
  if (!all_finite(v)) throw NonFiniteDerivative("scalar jet2 not finite");
  value = v.val.val;
  grad.resize(dim_);
  hess.resize(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    grad[i] = v.der[i].val;
    for (int j = 0; j < dim_; ++j) hess(i, j) = v.der[j].der[i];
  }
}

bool MetricField::in_domain(const ChartPoint& p) const {
  if (p.dim() != dim()) return false;
  for (int i = 0; i < p.dim(); ++i)
    if (!std::isfinite(p.coords[i])) return false;
  return domain_ ? domain_(p) : true;
}

void MetricField::require_in_domain(const ChartPoint& p) const {
  check_point(p, dim());
  if (!in_domain(p))
    throw DomainError("point outside domain of metric '" + name_ + "'");
}

Eigen::MatrixXd MetricField::components(const ChartPoint& p) const {
  require_in_domain(p);
  return components_.value(p);
}

MetricEval MetricField::eval(const ChartPoint& p) const {
  require_in_domain(p);
  MetricEval out;
  out.g = components_.value(p);
  Eigen::LLT<Eigen::MatrixXd> llt(out.g);
  if (llt.info() != Eigen::Success)
    throw DegenerateMetric("metric '" + name_ +
                           "' not positive definite at evaluation point");
  const int n = dim();
  out.g_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  double sqrt_det = 1.0;
  const Eigen::MatrixXd L = llt.matrixL();
  for (int i = 0; i < n; ++i) sqrt_det *= L(i, i);
  out.sqrt_det = sqrt_det;
  return out;
}

TensorJet MetricField::jet1(const ChartPoint& p) const {
  require_in_domain(p);
  return components_.jet1(p);
}

TensorJet MetricField::jet2(const ChartPoint& p) const {
  require_in_domain(p);
  return components_.jet2(p);
}

double MetricField::norm(const ChartPoint& p, const Eigen::VectorXd& v) const {
  Eigen::MatrixXd g = components(p);
  return std::sqrt(v.dot(g * v));
}

MetricField euclidean_metric(int dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidParam("euclidean_metric: bad dim");
  return MetricField(
      dim,
      [dim](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        (void)x;
        return SymMat<S>::identity(dim);
      },
      [](const ChartPoint&) { return true; }, "euclidean");
}

}  // namespace motskit
