// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motskit/hypersurface.hpp"

namespace motskit {

enum class Provenance { Paper, Derived, Trivial };
const char* to_string(Provenance p);

/// A named analytic expectation attached to a catalog entry, recomputable
/// from scratch through the library pipeline.
struct Expectation {
  std::string quantity;
  double expected = 0.0;
  double tol = 0.0;
  Provenance provenance = Provenance::Derived;
  std::function<double()> recompute;  // measured value
};

struct ExpectationResult {
  std::string quantity;
  double expected = 0.0;
  double measured = 0.0;
  double tol = 0.0;
  Provenance provenance = Provenance::Derived;
  bool pass = false;
};

/// An equivalent chart plus the point map into it, for
/// reparametrization-invariance checks.
struct ReparamChart {
  MetricField metric;
  std::function<ChartPoint(const ChartPoint&)> map;
};

/// One-dimensional warp factor with its fiber: g = dt^2 + xi(t)^2 h.
struct WarpedProfile {
  ScalarField xi;      // xi : [0,T) -> positive reals, xi(0) = 1
  MetricField fiber;   // dimension n-1
  double sign = 0.0;   // epsilon or delta
};

struct CatalogEntry {
  std::string name;    // canonical "family:key=value,..."
  std::string family;
  std::map<std::string, double> params;
  MetricField metric;
  std::string boundary_locus;              // human description
  double boundary_coordinate = 0.0;        // r_b / r_m / r_0 / t-range endpoint
  std::vector<Expectation> expectations;
  std::vector<std::pair<double, double>> sample_box;  // interior coordinate box
  std::optional<ReparamChart> reparam;
  std::optional<WarpedProfile> profile;    // warped/cap families

  /// Level-set slice at a coordinate value (r or t); grid_n <= 0 uses the
  /// family default resolution.
  std::function<EmbeddedSurface(double, int)> level_surface;
  /// The boundary hypersurface, when the chart is regular there.
  std::function<EmbeddedSurface(int)> boundary_surface;
  /// The base surface a normal foliation grows from.
  std::function<EmbeddedSurface(int)> foliation_base;

  std::vector<ExpectationResult> verify_expectations() const;
};

// --- the paper's families ---------------------------------------------------

/// g = (1 + m/(2 r^{n-2}))^{4/(n-2)} g_E on r >= (m/2)^{1/(n-2)} (isotropic
/// chart, regular at the horizon).
CatalogEntry make_spatial_schwarzschild(int n, double m);

/// g = (1 + r^2 - 2m/r^{n-2})^{-1} dr^2 + r^2 g_{S^{n-1}} on r >= (2m)^{1/(n-2)}.
CatalogEntry make_ads_schwarzschild(int n, double m);

/// g = (r^2 - 2m/r^{n-2})^{-1} dr^2 + r^2 h_flat on r > r_0 = (2m)^{1/n}.
CatalogEntry make_toroidal_kottler(int n, double m);

/// g = dt^2 + e^{2 sign t} h on [0, T) x fiber.
CatalogEntry make_warped_product(const MetricField& fiber, double sign, double t_max);
/// Flat-torus fiber convenience overload (fiber_dim axes, unit radii).
CatalogEntry make_warped_product(int fiber_dim, double sign, double t_max);

/// g = dt^2 + sinh(t)^2 g_{S^{n-1}} on (0, R].
CatalogEntry make_hyperbolic_cap(int n, double r_max);

/// Flat torus metric diag(radii^2) on [0,2pi)^k.
MetricField flat_torus_metric(int k, const std::vector<double>& radii = {});

// --- registry / CLI support --------------------------------------------------

struct FamilyInfo {
  std::string name;
  std::string description;
  std::string default_spec;
};

const std::vector<FamilyInfo>& catalog_families();

/// Parses "family:key=value,key=value" (e.g. "ads_schwarzschild:n=3,m=0.5").
/// Missing keys take family defaults. Throws UnknownFamily / InvalidParam.
CatalogEntry parse_metric_spec(const std::string& spec);

/// Deterministic low-discrepancy (Halton) samples inside the entry's box.
std::vector<ChartPoint> catalog_sample_points(const CatalogEntry& entry,
                                              std::size_t count, unsigned seed);

/// Halton samples in an explicit box.
std::vector<ChartPoint> halton_points(const std::vector<std::pair<double, double>>& box,
                                      std::size_t count, unsigned seed);

/// Mean curvature of the degenerate-boundary locus by one-sided Richardson
/// (Aitken) extrapolation of H(c(1 + h 2^{-k})), k = 0..4.
double extrapolated_boundary_mean_curvature(const CatalogEntry& entry, double step = 5e-3);

/// Shortest round-trip decimal text for a double (stable file output).
std::string format_double(double v);

}  // namespace motskit
