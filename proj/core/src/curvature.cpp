// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/curvature.hpp"

#include <cmath>

namespace motskit {

Tensor4 CurvatureBundle::lowered_riemann() const {
  const int n = static_cast<int>(g.rows());
  Tensor4 low(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += g(l, m) * riemann(m, k, i, j);
          low(l, k, i, j) = s;
        }
  return low;
}

ChristoffelJet christoffel_from_derivatives(const TensorJet& jet) {
  const int n = static_cast<int>(jet.value.rows());
  ChristoffelJet out;
  out.g = jet.value;
  Eigen::LLT<Eigen::MatrixXd> llt(out.g);
  if (llt.info() != Eigen::Success)
    throw DegenerateMetric("christoffel assembly: metric not positive definite");
  out.g_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));

  // Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
  out.gamma.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += out.g_inv(k, l) *
               (jet.d[i](j, l) + jet.d[j](i, l) - jet.d[l](i, j));
        out.gamma[k](i, j) = 0.5 * s;
        out.gamma[k](j, i) = out.gamma[k](i, j);
      }

  if (jet.dd.empty()) return out;

  // d_m g^{kl} = -g^{ka} (d_m g_ab) g^{bl}
  std::vector<Eigen::MatrixXd> dginv(n);
  for (int m = 0; m < n; ++m) dginv[m] = -out.g_inv * jet.d[m] * out.g_inv;

  out.dgamma.assign(n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n)));
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            s += dginv[m](k, l) *
                 (jet.d[i](j, l) + jet.d[j](i, l) - jet.d[l](i, j));
            s += out.g_inv(k, l) * (jet.dd[m][i](j, l) + jet.dd[m][j](i, l) -
                                    jet.dd[m][l](i, j));
          }
          out.dgamma[m][k](i, j) = 0.5 * s;
          out.dgamma[m][k](j, i) = out.dgamma[m][k](i, j);
        }
  return out;
}

CurvatureBundle curvature_from_derivatives(const TensorJet& jet) {
  ChristoffelJet cj = christoffel_from_derivatives(jet);
  const int n = static_cast<int>(jet.value.rows());

  CurvatureBundle b;
  b.g = cj.g;
  b.g_inv = cj.g_inv;
  b.gamma = cj.gamma;
  b.riemann = Tensor4(n);

  // R^l_{kij} = d_i Gamma^l_jk - d_j Gamma^l_ik
  //           + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = cj.dgamma[i][l](j, k) - cj.dgamma[j][l](i, k);
          for (int m = 0; m < n; ++m)
            s += cj.gamma[l](i, m) * cj.gamma[m](j, k) -
                 cj.gamma[l](j, m) * cj.gamma[m](i, k);
          b.riemann(l, k, i, j) = s;
        }

  // Ricci_ab = R^i_{a i b} (trace over the first slot of R(X, d_b) d_a)
  b.ricci.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int bcol = 0; bcol < n; ++bcol) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += b.riemann(i, a, i, bcol);
      b.ricci(a, bcol) = s;
    }

  b.scalar = (b.g_inv.array() * b.ricci.array()).sum();
  return b;
}

CurvatureBundle curvature(const MetricField& m, const ChartPoint& p) {
  return curvature_from_derivatives(m.jet2(p));
}

ChristoffelJet christoffel_jet(const MetricField& m, const ChartPoint& p) {
  return christoffel_from_derivatives(m.jet2(p));
}

double sectional_curvature(const CurvatureBundle& b, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
  const int n = static_cast<int>(b.g.rows());
  const double xx = x.dot(b.g * x);
  const double yy = y.dot(b.g * y);
  const double xy = x.dot(b.g * y);
  const double gram = xx * yy - xy * xy;
  if (gram < 1e-12)
    throw DegeneratePlane("sectional curvature: plane is degenerate");

  // <R(X,Y)Y, X> = g_{lm} X^m R^l_{kij} Y^k X^i Y^j
  double num = 0.0;
  for (int l = 0; l < n; ++l) {
    double rl = 0.0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          rl += b.riemann(l, k, i, j) * y[k] * x[i] * y[j];
    double gx = 0.0;
    for (int mcol = 0; mcol < n; ++mcol) gx += b.g(l, mcol) * x[mcol];
    num += gx * rl;
  }
  return num / gram;
}

double sectional_curvature(const MetricField& m, const ChartPoint& p,
                           const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return sectional_curvature(curvature(m, p), x, y);
}

namespace {

// 4th-order central stencils on 5 points.
double fd1(const std::array<double, 5>& f, double h) {
  return (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h);
}
double fd2(const std::array<double, 5>& f, double h) {
  return (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) /
         (12.0 * h * h);
}

}  // namespace

CurvatureBundle fd_curvature_oracle(const MetricField& m, const ChartPoint& p,
                                    double step) {
  if (!(step > 0.0)) throw InvalidParam("fd_curvature_oracle: step must be > 0");
  const int n = m.dim();
  m.require_in_domain(p);

  auto value_at = [&](const Eigen::VectorXd& x) {
    ChartPoint q{x, p.chart_id};
    if (!m.in_domain(q))
      throw DomainError("fd_curvature_oracle: stencil point left the domain");
    return m.components(q);
  };

  TensorJet jet;
  jet.value = value_at(p.coords);
  jet.d.assign(n, Eigen::MatrixXd::Zero(n, n));
  jet.dd.assign(n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n)));

  // Axis stencils give d_k and d_k d_k.
  for (int k = 0; k < n; ++k) {
    std::array<Eigen::MatrixXd, 5> gs;
    for (int s = 0; s < 5; ++s) {
      Eigen::VectorXd x = p.coords;
      x[k] += (s - 2) * step;
      gs[s] = (s == 2) ? jet.value : value_at(x);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::array<double, 5> f{gs[0](i, j), gs[1](i, j), gs[2](i, j),
                                gs[3](i, j), gs[4](i, j)};
        jet.d[k](i, j) = fd1(f, step);
        jet.dd[k][k](i, j) = fd2(f, step);
      }
  }

  // Mixed d_k d_l: outer 4th-order first-derivative stencil in k applied to
  // the same stencil in l (16 off-center evaluations per pair).
  const std::array<int, 4> off{-2, -1, 1, 2};
  const std::array<double, 4> w{1.0, -8.0, 8.0, -1.0};
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          Eigen::VectorXd x = p.coords;
          x[k] += off[a] * step;
          x[l] += off[b] * step;
          acc += (w[a] * w[b]) * value_at(x);
        }
      acc /= (12.0 * step) * (12.0 * step);
      jet.dd[k][l] = acc;
      jet.dd[l][k] = acc;
    }

  return curvature_from_derivatives(jet);
}

}  // namespace motskit
