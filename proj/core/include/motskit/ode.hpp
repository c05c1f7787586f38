// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "motskit/errors.hpp"

namespace motskit {

/// Right-hand side y' = f(t, y).
using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

/// Called after every accepted step; may throw to abort the integration.
using OdeStepWatch = std::function<void(double, const Eigen::VectorXd&)>;

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 1e-3;
  std::size_t max_steps = 200000;
};

/// Dormand-Prince 5(4) with standard PI-free step control. Integrates from
/// (t0, y0) to t1 and returns y(t1); t1 may be smaller than t0.
inline Eigen::VectorXd integrate_rk45(const OdeRhs& f, double t0,
                                      const Eigen::VectorXd& y0, double t1,
                                      const OdeOptions& opt = {},
                                      const OdeStepWatch& watch = {}) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  double t = t0;
  Eigen::VectorXd y = y0;
  double span = std::abs(t1 - t0);
  if (span == 0.0) return y;
  double h = dir * std::min(opt.initial_step, span);

  Eigen::VectorXd k1 = f(t, y);
  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    if (dir * (t + h - t1) > 0.0) h = t1 - t;

    // A stage outside the rhs's domain is a recoverable rejection: shrink the
    // step. Only a step too small to resolve the boundary propagates it.
    Eigen::VectorXd ynew, k7;
    double err = 0.0;
    try {
      Eigen::VectorXd k2 = f(t + 0.2 * h, y + h * (a21 * k1));
      Eigen::VectorXd k3 = f(t + 0.3 * h, y + h * (a31 * k1 + a32 * k2));
      Eigen::VectorXd k4 = f(t + 0.8 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      Eigen::VectorXd k5 = f(t + 8.0 / 9.0 * h,
                             y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      Eigen::VectorXd k6 =
          f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = f(t + h, ynew);

      Eigen::VectorXd err_vec =
          h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        double scale =
            opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        err = std::max(err, std::abs(err_vec[i]) / scale);
      }
    } catch (const DomainError&) {
      h *= 0.25;
      if (std::abs(h) < 1e-13 * std::max(1.0, std::abs(t))) throw;
      continue;
    }

    if (err <= 1.0) {
      t += h;
      y = std::move(ynew);
      k1 = std::move(k7);  // FSAL
      if (watch) watch(t, y);
      if (t == t1) return y;
    }

    double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
      throw NumericalError("integrate_rk45: step size underflow");
  }
  throw NumericalError("integrate_rk45: exceeded max step count");
}

/// Classical fixed-step RK4 (used for independent cross-checks).
inline Eigen::VectorXd integrate_rk4(const OdeRhs& f, double t0,
                                     const Eigen::VectorXd& y0, double t1,
                                     int steps) {
  if (steps < 1) throw InvalidParam("integrate_rk4: steps must be >= 1");
  double h = (t1 - t0) / steps;
  Eigen::VectorXd y = y0;
  double t = t0;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXd k1 = f(t, y);
    Eigen::VectorXd k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    Eigen::VectorXd k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    Eigen::VectorXd k4 = f(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return y;
}

}  // namespace motskit
