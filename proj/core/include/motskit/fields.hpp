// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <Eigen/Dense>
#include <concepts>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "motskit/chart.hpp"
#include "motskit/dual.hpp"
#include "motskit/errors.hpp"

namespace motskit {

/// Symmetric matrix over a generic scalar; upper triangle stored once so the
/// symmetry invariant holds by construction.
template <class S>
struct SymMat {
  int n = 0;
  std::array<S, kMaxDim*(kMaxDim + 1) / 2> a{};

  SymMat() = default;
  explicit SymMat(int dim) : n(dim) {}

  static int tri(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j + 1) / 2 + i;
  }
  S& operator()(int i, int j) { return a[tri(i, j)]; }
  const S& operator()(int i, int j) const { return a[tri(i, j)]; }

  static SymMat identity(int dim) {
    SymMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = S(1.0);
    return m;
  }
};

namespace field_detail {

template <class F, class S>
concept ComponentFn = requires(const F& f, std::span<const S> x) {
  { f(x) } -> std::convertible_to<SymMat<S>>;
};

template <class F, class S>
concept ScalarFn = requires(const F& f, std::span<const S> x) {
  { f(x) } -> std::convertible_to<S>;
};

template <class F, class S>
concept VectorFn = requires(const F& f, std::span<const S> x) {
  { f(x) } -> std::convertible_to<std::array<S, kMaxDim>>;
};

}  // namespace field_detail

void check_point(const ChartPoint& p, int expected_dim);

/// First and second coordinate derivatives of a symmetric tensor at a point.
struct TensorJet {
  Eigen::MatrixXd value;                          // T_ij
  std::vector<Eigen::MatrixXd> d;                 // d[k](i,j)   = del_k T_ij
  std::vector<std::vector<Eigen::MatrixXd>> dd;   // dd[k][l](i,j) = del_k del_l T_ij
};

/// A smooth symmetric 2-tensor field on a chart, evaluable on doubles and on
/// nested dual numbers so exact first and second derivatives are available.
class SymmetricTensorField {
 public:
  SymmetricTensorField() = default;

  template <class F>
    requires field_detail::ComponentFn<F, double> &&
             field_detail::ComponentFn<F, Dual1> &&
             field_detail::ComponentFn<F, Dual2>
  SymmetricTensorField(int dim, F f)
      : dim_(dim),
        f0_([f](std::span<const double> x) -> SymMat<double> { return f(x); }),
        f1_([f](std::span<const Dual1> x) -> SymMat<Dual1> { return f(x); }),
        f2_([f](std::span<const Dual2> x) -> SymMat<Dual2> { return f(x); }) {}

  int dim() const { return dim_; }
  bool valid() const { return static_cast<bool>(f0_); }

  Eigen::MatrixXd value(const ChartPoint& p) const;
  /// Value and first derivatives (dd left empty).
  TensorJet jet1(const ChartPoint& p) const;
  /// Value, first, and second derivatives.
  TensorJet jet2(const ChartPoint& p) const;

  /// Raw generic-scalar evaluation; lets derived fields (K = c g, warped
  /// products over a fiber metric) reuse these components inside their own
  /// generic component functions.
  template <class S>
  SymMat<S> eval_components(std::span<const S> x) const {
    if constexpr (std::is_same_v<S, double>)
      return f0_(x);
    else if constexpr (std::is_same_v<S, Dual1>)
      return f1_(x);
    else
      return f2_(x);
  }

 private:
  int dim_ = 0;
  std::function<SymMat<double>(std::span<const double>)> f0_;
  std::function<SymMat<Dual1>(std::span<const Dual1>)> f1_;
  std::function<SymMat<Dual2>(std::span<const Dual2>)> f2_;
};

/// A smooth scalar field with the same dual-number evaluation contract.
class ScalarField {
 public:
  ScalarField() = default;

  template <class F>
    requires field_detail::ScalarFn<F, double> &&
             field_detail::ScalarFn<F, Dual1> && field_detail::ScalarFn<F, Dual2>
  ScalarField(int dim, F f)
      : dim_(dim),
        f0_([f](std::span<const double> x) -> double { return f(x); }),
        f1_([f](std::span<const Dual1> x) -> Dual1 { return f(x); }),
        f2_([f](std::span<const Dual2> x) -> Dual2 { return f(x); }) {}

  int dim() const { return dim_; }
  bool valid() const { return static_cast<bool>(f0_); }

  double value(const ChartPoint& p) const;
  /// Gradient of the field (coordinate partials).
  Eigen::VectorXd gradient(const ChartPoint& p) const;
  /// Coordinate Hessian (plain second partials, no connection terms).
  void second_derivatives(const ChartPoint& p, double& value,
                          Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const;

  /// Raw generic-scalar evaluation (see SymmetricTensorField::eval_components).
  template <class S>
  S eval_generic(std::span<const S> x) const {
    if constexpr (std::is_same_v<S, double>)
      return f0_(x);
    else if constexpr (std::is_same_v<S, Dual1>)
      return f1_(x);
    else
      return f2_(x);
  }

 private:
  int dim_ = 0;
  std::function<double(std::span<const double>)> f0_;
  std::function<Dual1(std::span<const Dual1>)> f1_;
  std::function<Dual2(std::span<const Dual2>)> f2_;
};

/// Metric evaluation products at a point.
struct MetricEval {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  double sqrt_det = 0.0;
};

/// A Riemannian metric presented as coordinate components on one chart,
/// restricted by a domain predicate.
class MetricField {
 public:
  using DomainPredicate = std::function<bool(const ChartPoint&)>;

  MetricField() = default;

  template <class F>
  MetricField(int dim, F components, DomainPredicate domain, std::string name)
      : components_(dim, std::move(components)),
        domain_(std::move(domain)),
        name_(std::move(name)) {}

  int dim() const { return components_.dim(); }
  const std::string& name() const { return name_; }
  bool valid() const { return components_.valid(); }

  bool in_domain(const ChartPoint& p) const;
  void require_in_domain(const ChartPoint& p) const;

  /// Components only (no factorization).
  Eigen::MatrixXd components(const ChartPoint& p) const;
  const SymmetricTensorField& component_field() const { return components_; }

  /// g, g^{-1}, sqrt(det g); throws DomainError / DegenerateMetric.
  MetricEval eval(const ChartPoint& p) const;

  TensorJet jet1(const ChartPoint& p) const;
  TensorJet jet2(const ChartPoint& p) const;

  /// Length of a tangent vector at p.
  double norm(const ChartPoint& p, const Eigen::VectorXd& v) const;

 private:
  SymmetricTensorField components_;
  DomainPredicate domain_;
  std::string name_;
};

/// Euclidean metric on R^n (identity components, all of R^n).
MetricField euclidean_metric(int dim);

}  // namespace motskit
