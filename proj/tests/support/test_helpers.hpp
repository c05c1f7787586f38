// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <random>

#include "motskit/catalog.hpp"
#include "motskit/curvature.hpp"

namespace motskit::testing {

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline double uniform(std::mt19937& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline Eigen::VectorXd random_vector(std::mt19937& gen, int n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(gen, -scale, scale);
  return v;
}

inline double sup_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

/// Componentwise sup deviation between two curvature bundles.
inline double bundle_deviation(const CurvatureBundle& a, const CurvatureBundle& b) {
  const int n = static_cast<int>(a.g.rows());
  double dev = std::abs(a.scalar - b.scalar);
  dev = std::max(dev, sup_abs(a.ricci - b.ricci));
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dev = std::max(dev,
                         std::abs(a.riemann(l, k, i, j) - b.riemann(l, k, i, j)));
  return dev;
}

/// Covariant divergence of the Einstein tensor G^i_j = g^{ik}(Ric - S g / 2)_{kj}
/// by 2nd-order central differences of the curvature pipeline; contracted
/// Bianchi says this vanishes.
inline Eigen::VectorXd einstein_divergence_fd(const MetricField& m, const ChartPoint& p,
                                              double step = 1e-4) {
  const int n = m.dim();
  auto einstein_mixed = [&](const Eigen::VectorXd& x) {
    CurvatureBundle b = curvature(m, ChartPoint{x, p.chart_id});
    return Eigen::MatrixXd(b.g_inv *
                           (b.ricci - 0.5 * b.scalar * b.g));
  };
  CurvatureBundle base = curvature(m, p);
  const Eigen::MatrixXd g_up = base.g_inv * (base.ricci - 0.5 * base.scalar * base.g);

  // dG[k] = del_k G^i_j
  std::vector<Eigen::MatrixXd> d_up(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd xp = p.coords, xm = p.coords;
    xp[k] += step;
    xm[k] -= step;
    d_up[k] = (einstein_mixed(xp) - einstein_mixed(xm)) / (2.0 * step);
  }

  Eigen::VectorXd div = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += d_up[i](i, j);
      for (int mdx = 0; mdx < n; ++mdx)
        acc += base.gamma[i](i, mdx) * g_up(mdx, j) -
               base.gamma[mdx](i, j) * g_up(i, mdx);
    }
    div[j] = acc;
  }
  return div;
}

}  // namespace motskit::testing
