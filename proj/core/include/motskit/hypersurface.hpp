// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "motskit/fiber_grid.hpp"
#include "motskit/initial_data.hpp"

namespace motskit {

enum class FiberTopology { Torus, Sphere, LevelSet };

/// A smooth immersion u -> chart coordinates with dual-number evaluation for
/// exact first and second derivatives.
class ImmersionField {
 public:
  struct Jet {
    Eigen::VectorXd x;                  // chart point
    Eigen::MatrixXd dx;                 // n x k, column A = d_A phi
    std::vector<Eigen::MatrixXd> ddx;   // ddx[A] is n x k, column B = d_A d_B phi
  };

  ImmersionField() = default;

  template <class F>
  ImmersionField(int fiber_dim, int ambient_dim, F f)
      : k_(fiber_dim),
        n_(ambient_dim),
        f0_([f](std::span<const double> u) -> std::array<double, kMaxDim> { return f(u); }),
        f2_([f](std::span<const Dual2> u) -> std::array<Dual2, kMaxDim> { return f(u); }) {}

  int fiber_dim() const { return k_; }
  int ambient_dim() const { return n_; }
  bool valid() const { return static_cast<bool>(f0_); }

  Eigen::VectorXd value(const Eigen::VectorXd& u) const;
  Jet jet2(const Eigen::VectorXd& u) const;

 private:
  int k_ = 0, n_ = 0;
  std::function<std::array<double, kMaxDim>(std::span<const double>)> f0_;
  std::function<std::array<Dual2, kMaxDim>(std::span<const Dual2>)> f2_;
};

/// How to orient the unit normal (it is determined up to sign by tangency).
struct NormalChoice {
  enum class Kind { IntoManifold, UserVector };
  Kind kind = Kind::IntoManifold;
  /// Reference direction for UserVector: the normal is flipped to have
  /// positive inner product with reference(p).
  std::function<Eigen::VectorXd(const ChartPoint&)> reference;

  static NormalChoice into_manifold() { return {}; }
  static NormalChoice user_vector(std::function<Eigen::VectorXd(const ChartPoint&)> ref) {
    NormalChoice c;
    c.kind = Kind::UserVector;
    c.reference = std::move(ref);
    return c;
  }
};

/// A closed two-sided hypersurface presented by an immersion of a fiber grid.
class EmbeddedSurface {
 public:
  EmbeddedSurface() = default;
  EmbeddedSurface(MetricField ambient, ImmersionField immersion, NormalChoice normal,
                  FiberTopology topology, FiberGrid grid,
                  std::optional<double> level_value = std::nullopt);

  /// Level set {coordinate 0 = value} of a chart whose remaining coordinates
  /// parametrize the fiber (radial charts of the catalog families).
  static EmbeddedSurface coordinate_level_set(const MetricField& ambient, double value,
                                              FiberGrid grid, NormalChoice normal);

  /// Round hypersphere |x| = radius in a Cartesian chart, parametrized by
  /// hyperspherical angles.
  static EmbeddedSurface coordinate_sphere(const MetricField& ambient, double radius,
                                           FiberGrid grid, NormalChoice normal);

  /// Periodic graph {(u, height(u))} over the first n-1 chart coordinates.
  static EmbeddedSurface graph_over_torus(const MetricField& ambient,
                                          ScalarField height, FiberGrid grid,
                                          NormalChoice normal);

  const MetricField& ambient() const { return ambient_; }
  const ImmersionField& immersion() const { return immersion_; }
  const NormalChoice& normal_choice() const { return normal_; }
  FiberTopology topology() const { return topology_; }
  const FiberGrid& grid() const { return grid_; }
  std::optional<double> level_value() const { return level_value_; }

 private:
  MetricField ambient_;
  ImmersionField immersion_;
  NormalChoice normal_;
  FiberTopology topology_ = FiberTopology::Torus;
  FiberGrid grid_ = FiberGrid::torus(2, 4);
  std::optional<double> level_value_;
};

/// First and second fundamental forms at one fiber point.
///
/// Conventions: A(X,Y) = <nabla_X nu, Y> with nu the chosen unit normal,
/// H = h^{AB} A_AB. For a boundary hypersurface with the into-manifold
/// normal this is the divergence of the inward-pointing unit normal.
struct SurfacePointGeometry {
  ChartPoint point;
  Eigen::MatrixXd tangents;      // n x k, columns T_A
  Eigen::VectorXd normal;        // unit
  Eigen::MatrixXd induced;       // h_AB
  Eigen::MatrixXd induced_inv;
  Eigen::MatrixXd second_fund;   // A_AB
  double mean_curvature = 0.0;   // H
};

SurfacePointGeometry surface_point_geometry(const EmbeddedSurface& s,
                                            const Eigen::VectorXd& u);

/// (h, A, H) from frame data: tangents plus the coordinate derivative of the
/// unit normal along the fiber directions (the foliation integrator's state).
SurfacePointGeometry geometry_from_normal_derivatives(
    const MetricField& ambient, const ChartPoint& x, const Eigen::MatrixXd& tangents,
    const Eigen::VectorXd& normal, const Eigen::MatrixXd& dnormal,
    const std::vector<Eigen::MatrixXd>& gamma);

/// Coordinate derivatives d_A nu of the unit normal along the surface,
/// reconstructed from the shape operator (initial data for the variational
/// geodesic system).
Eigen::MatrixXd normal_coordinate_derivatives(const SurfacePointGeometry& geom,
                                              const std::vector<Eigen::MatrixXd>& gamma);

/// chi = K|_{T Sigma} + A and theta = tr_h chi at one fiber point.
struct NullExpansionValues {
  Eigen::MatrixXd chi;
  double theta = 0.0;
  double tr_k_sigma = 0.0;  // tr_h K|_{T Sigma}
  SurfacePointGeometry geometry;
};

NullExpansionValues null_expansion(const EmbeddedSurface& s, const InitialDataSet& ids,
                                   const Eigen::VectorXd& u);

enum class TrappedClass { OuterTrapped, WeaklyOuterTrapped, MOTS, Untrapped };

const char* to_string(TrappedClass c);

/// Classifies by the sign pattern of theta over the fiber grid.
TrappedClass classify(const EmbeddedSurface& s, const InitialDataSet& ids,
                      double tol = 1e-7);

/// theta at every grid node (used by classify and the profile tooling).
Eigen::VectorXd theta_on_grid(const EmbeddedSurface& s, const InitialDataSet& ids);

}  // namespace motskit
