// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include "motskit/catalog.hpp"

namespace motskit {

/// Coefficients of f(t) = c1 e^t + c2 e^{-t} determined by the boundary
/// values: c1 + c2 = a, c1 - c2 = |grad f|_N > 0.
struct ObataSolution {
  double c1 = 0.0, c2 = 0.0;
  double a = 0.0, grad_norm = 0.0;
  enum class Case { Compact, Noncompact } kind = Case::Noncompact;
};

/// Closed-form solution of xi'' = xi, xi(0) = 1, xi'(0) = a / grad_norm.
ObataSolution solve_warp_ode(double a, double grad_norm);

/// xi(t) = (c1 e^t - c2 e^{-t}) / (c1 - c2).
double xi_closed_form(const ObataSolution& sol, double t);
/// f(t) = c1 e^t + c2 e^{-t}.
double f_closed_form(const ObataSolution& sol, double t);

/// Max deviation between the closed form and a 4th-order numerical
/// integration of xi'' = xi on [0, t_max] (independent cross-check).
double xi_ode_deviation(const ObataSolution& sol, double t_max = 5.0,
                        int samples = 64);

/// The warp profile xi as a ScalarField over t, paired with a fiber.
WarpedProfile warped_profile_from(const ObataSolution& sol, const MetricField& fiber);

/// sup over points of the componentwise Obata residual |hess f - f g|.
double hessian_residual(const MetricField& m, const ScalarField& f,
                        std::span<const ChartPoint> points);

/// Level-set identities of the c1/c2 decomposition on a closed fiber
/// (Laplacian identity, divergence-theorem recovery of c2, constancy of c1).
struct LevelSetReport {
  double laplacian_identity_dev = 0.0;  // sup |Lap c1 - 2(n-1) c2|
  double c2_from_integral = 0.0;        // (int Lap c1) / (2(n-1) |N|)
  double c1_constancy_dev = 0.0;        // sup |c1 - mean c1|
};

LevelSetReport level_set_analysis(const FiberGrid& grid, const MetricField& fiber_h,
                                  const Eigen::VectorXd& c1_values, double claimed_c2,
                                  int ambient_n);

struct ReconstructedManifold {
  ObataSolution solution;
  WarpedProfile profile;
  MetricField metric;   // dt^2 + xi(t)^2 h
  ScalarField f_field;  // f(t) on the full chart
};

struct ReconstructReport {
  double obata_residual = 0.0;  // sup |hess f - f g| over the sample grid
  double shape_residual = 0.0;  // sup |A - (xi'/xi) h| on a slice
};

/// Builds dt^2 + xi^2 h over a Ricci-flat fiber, sets f = c1 e^t + c2 e^{-t},
/// and verifies the Obata residual and the slice shape identity
/// A = (xi'/xi) h. Throws ResidualExceeded when the Obata residual is not
/// below 1e-8.
ReconstructedManifold reconstruct_and_verify(double a, double grad_norm,
                                             const MetricField& fiber,
                                             ReconstructReport* report = nullptr);

/// Integrates the Jacobi equation J'' = -K J with K = -1 from J(0) = 0,
/// J'(0) = 1 and returns |J|(R) / |J|(r0); equals
/// (e^R - e^{-R}) / (e^{r0} - e^{-r0}) analytically.
double jacobi_growth_check(double r_max, double r0);

}  // namespace motskit
