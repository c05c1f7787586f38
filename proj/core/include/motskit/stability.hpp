// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <complex>

#include "motskit/hypersurface.hpp"

namespace motskit {

/// Discretized MOTS stability operator
///   L(phi) = -Lap phi + 2 <X, grad phi> + P phi,
///   P = S_Sigma/2 - (mu + J(nu)) - |chi|^2/2 + div X - |X|^2
/// on a periodic torus grid.
struct StabilityAssembly {
  FiberGrid grid = FiberGrid::torus(2, 4);
  DiscretizationOrder order = DiscretizationOrder::Spectral;
  Eigen::MatrixXd op;              // dense, size x size
  Eigen::VectorXd potential;       // P per node
  Eigen::MatrixXd drift;           // X^A per node (size x k)
  std::vector<Eigen::MatrixXd> induced;  // h per node
};

struct StabilityOptions {
  int grid_points = 32;            // per axis; <= 0 keeps the surface grid
  DiscretizationOrder order = DiscretizationOrder::Spectral;
  /// Spectral assembly requires the induced metric constant across nodes
  /// within this tolerance; otherwise FD4 is used.
  double constant_metric_tol = 1e-12;
};

/// Samples the stability-operator coefficients of a torus-fibered surface in
/// an initial data set and assembles the dense operator.
StabilityAssembly assemble_stability_operator(const EmbeddedSurface& surface,
                                              const InitialDataSet& ids,
                                              const StabilityOptions& opt = {});

/// Assembly from explicit coefficients (synthetic potentials and drifts).
StabilityAssembly assemble_from_coefficients(const FiberGrid& grid,
                                             const Eigen::MatrixXd& induced_constant,
                                             const Eigen::VectorXd& potential,
                                             const Eigen::MatrixXd& drift,
                                             DiscretizationOrder order =
                                                 DiscretizationOrder::Spectral);

struct PrincipalEig {
  double lambda1 = 0.0;
  Eigen::VectorXd eigenfunction;   // positive, sup-normalized to 1
  double residual = 0.0;           // ||L phi - lambda phi||_inf
  std::vector<std::complex<double>> spectrum;  // all eigenvalues, sorted
};

/// Dense eigendecomposition; selects the eigenvalue of smallest real part.
/// Among real parts within 1e-10 of the minimum the smallest |Im| wins; it
/// must be real to 1e-8 (else ComplexPrincipal) and admit a sign-definite
/// eigenvector (else NonPositiveEigenfunction).
PrincipalEig principal_eigenvalue(const StabilityAssembly& assembly);

/// Per-slice coefficient fields consumed by the theta-evolution equation.
struct SliceData {
  FiberGrid grid = FiberGrid::torus(2, 4);
  DiscretizationOrder order = DiscretizationOrder::Spectral;
  std::vector<Eigen::MatrixXd> induced;  // h per node
  Eigen::VectorXd theta;
  Eigen::VectorXd chi_sq;          // |chi|^2
  Eigen::VectorXd scalar_sigma;    // S_Sigma
  Eigen::VectorXd mu_plus_j_nu;    // mu + J(nu)
  Eigen::VectorXd tr_k;            // ambient tr_g K
  Eigen::MatrixXd drift;           // X^A per node
};

/// Right-hand side of the theta evolution equation
///   d theta / dt = -Lap psi + 2 <X, grad psi>
///                  + (Q - theta^2/2 + theta tr K + div X - |X|^2) psi
/// with Q = S_Sigma/2 - (mu + J(nu)) - |chi|^2/2.
Eigen::VectorXd evolution_rhs(const SliceData& slice, const Eigen::VectorXd& psi);

}  // namespace motskit
