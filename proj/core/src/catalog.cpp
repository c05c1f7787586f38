// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "motskit/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "motskit/curvature.hpp"

namespace motskit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Derived: return "derived";
    case Provenance::Trivial: return "trivial";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::vector<ExpectationResult> CatalogEntry::verify_expectations() const {
  std::vector<ExpectationResult> out;
  out.reserve(expectations.size());
  for (const Expectation& e : expectations) {
    ExpectationResult r;
    r.quantity = e.quantity;
    r.expected = e.expected;
    r.tol = e.tol;
    r.provenance = e.provenance;
    r.measured = e.recompute();
    r.pass = std::abs(r.measured - r.expected) <= e.tol;
    out.push_back(std::move(r));
  }
  return out;
}

// --- sampling ----------------------------------------------------------------

namespace {

double radical_inverse(std::size_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, x = 0.0;
  while (i > 0) {
    x += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return x;
}

constexpr std::array<unsigned, 6> kHaltonBases{2, 3, 5, 7, 11, 13};

}  // namespace

std::vector<ChartPoint> halton_points(const std::vector<std::pair<double, double>>& box,
                                      std::size_t count, unsigned seed) {
  std::vector<ChartPoint> pts;
  pts.reserve(count);
  const std::size_t offset = static_cast<std::size_t>(seed) * 100003 + 17;
  for (std::size_t i = 0; i < count; ++i) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(box.size()));
    for (std::size_t d = 0; d < box.size(); ++d) {
      const double t = radical_inverse(offset + i, kHaltonBases[d % kHaltonBases.size()]);
      x[static_cast<Eigen::Index>(d)] = box[d].first + t * (box[d].second - box[d].first);
    }
    pts.push_back(ChartPoint{x, "default"});
  }
  return pts;
}

std::vector<ChartPoint> catalog_sample_points(const CatalogEntry& entry,
                                              std::size_t count, unsigned seed) {
  if (entry.sample_box.empty())
    throw InvalidParam("catalog_sample_points: entry has no sample box");
  return halton_points(entry.sample_box, count, seed);
}

// --- shared expectation helpers ----------------------------------------------

namespace {

/// Measured value at the sample of worst deviation from `expected`.
double worst_of(const std::vector<double>& measured, double expected) {
  double out = measured.empty() ? expected : measured.front();
  double dev = -1.0;
  for (double v : measured)
    if (std::abs(v - expected) > dev) {
      dev = std::abs(v - expected);
      out = v;
    }
  return out;
}

std::function<double()> scalar_curvature_probe(const MetricField& m,
                                               std::vector<std::pair<double, double>> box,
                                               double expected) {
  return [m, box = std::move(box), expected]() {
    std::vector<double> vals;
    for (const ChartPoint& p : halton_points(box, 5, 0))
      vals.push_back(curvature(m, p).scalar);
    return worst_of(vals, expected);
  };
}

std::function<double()> boundary_mean_curvature_probe(
    std::function<EmbeddedSurface(int)> make_surface, double expected) {
  return [make_surface = std::move(make_surface), expected]() {
    EmbeddedSurface s = make_surface(0);
    std::vector<double> vals;
    const std::size_t size = s.grid().size();
    for (int j = 0; j < 5; ++j) {
      const std::size_t idx = (size * static_cast<std::size_t>(j)) / 5;
      vals.push_back(surface_point_geometry(s, s.grid().node(idx)).mean_curvature);
    }
    return worst_of(vals, expected);
  };
}

std::function<double()> boundary_theta_probe(std::function<EmbeddedSurface(int)> make_surface,
                                             const MetricField& m, double signed_eps,
                                             double expected) {
  return [make_surface = std::move(make_surface), m, signed_eps, expected]() {
    EmbeddedSurface s = make_surface(0);
    InitialDataSet ids = make_umbilic_data(m, signed_eps);
    std::vector<double> vals;
    const std::size_t size = s.grid().size();
    for (int j = 0; j < 5; ++j) {
      const std::size_t idx = (size * static_cast<std::size_t>(j)) / 5;
      vals.push_back(null_expansion(s, ids, s.grid().node(idx)).theta);
    }
    return worst_of(vals, expected);
  };
}

std::function<double()> sectional_probe(const MetricField& m,
                                        std::vector<std::pair<double, double>> box,
                                        double expected) {
  return [m, box = std::move(box), expected]() {
    std::vector<double> vals;
    const int n = m.dim();
    std::size_t stream = 0;
    for (const ChartPoint& p : halton_points(box, 5, 1)) {
      Eigen::VectorXd x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = radical_inverse(1000 + stream, 2) - 0.5;
        y[i] = radical_inverse(1000 + stream, 3) - 0.5;
        ++stream;
      }
      vals.push_back(sectional_curvature(m, p, x, y));
    }
    return worst_of(vals, expected);
  };
}

/// sup |hess f - Gamma df - f g| over 5 box samples (Obata residual).
std::function<double()> obata_residual_probe(const MetricField& m, const ScalarField& f,
                                             std::vector<std::pair<double, double>> box) {
  return [m, f, box = std::move(box)]() {
    double sup = 0.0;
    const int n = m.dim();
    for (const ChartPoint& p : halton_points(box, 5, 2)) {
      ChristoffelJet cj = christoffel_jet(m, p);
      double fv;
      Eigen::VectorXd grad;
      Eigen::MatrixXd hess;
      f.second_derivatives(p, fv, grad, hess);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double cov = hess(i, j);
          for (int k = 0; k < n; ++k) cov -= cj.gamma[k](i, j) * grad[k];
          sup = std::max(sup, std::abs(cov - fv * cj.g(i, j)));
        }
    }
    return sup;
  };
}

FiberGrid default_sphere_grid(int fiber_dim, int n_override) {
  if (fiber_dim == 2) {
    const int n = n_override > 0 ? n_override : 32;
    return FiberGrid::sphere({n, 2 * n});
  }
  const int n = n_override > 0 ? n_override : 12;
  std::vector<int> shape(static_cast<std::size_t>(fiber_dim), n);
  shape.back() = 2 * n;
  return FiberGrid::sphere(shape);
}

FiberGrid default_torus_grid(int fiber_dim, int n_override) {
  return FiberGrid::torus(fiber_dim, n_override > 0 ? n_override : 32);
}

/// Repeated Aitken delta-squared acceleration (exact on geometric tails).
double aitken_limit(std::vector<double> seq) {
  while (seq.size() >= 3) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
      const double d1 = seq[i + 1] - seq[i];
      const double d2 = seq[i + 2] - 2.0 * seq[i + 1] + seq[i];
      next.push_back(std::abs(d2) > 1e-300 ? seq[i] - d1 * d1 / d2 : seq[i + 2]);
    }
    seq = std::move(next);
  }
  return seq.back();
}

}  // namespace

// --- spatial Schwarzschild ----------------------------------------------------

CatalogEntry make_spatial_schwarzschild(int n, double m) {
  if (n < 3 || n > kMaxDim) throw InvalidParam("spatial_schwarzschild: need 3 <= n <= 6");
  if (!(m > 0.0)) throw InvalidParam("spatial_schwarzschild: need m > 0");

  const double r_b = std::pow(0.5 * m, 1.0 / (n - 2));

  MetricField metric(
      n,
      [n, m](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        S r2 = x[0] * x[0];
        for (int i = 1; i < n; ++i) r2 += x[i] * x[i];
        S r = sqrt(r2);
        S u = 1.0 + (0.5 * m) / pow(r, double(n - 2));
        S conf = pow(u, 4.0 / double(n - 2));
        SymMat<S> g(n);
        for (int i = 0; i < n; ++i) g(i, i) = conf;
        return g;
      },
      [r_b](const ChartPoint& p) {
        return p.coords.norm() >= r_b * (1.0 - 1e-12);
      },
      "spatial_schwarzschild");

  CatalogEntry e;
  e.family = "spatial_schwarzschild";
  e.params = {{"n", double(n)}, {"m", m}};
  e.name = "spatial_schwarzschild:n=" + std::to_string(n) + ",m=" + format_double(m);
  e.metric = metric;
  e.boundary_coordinate = r_b;
  e.boundary_locus = "r = (m/2)^{1/(n-2)} = " + format_double(r_b) + " (isotropic radius)";

  const double lo = 1.05 * r_b / std::sqrt(double(n)) + 0.1;
  e.sample_box.assign(static_cast<std::size_t>(n), {lo, lo + 2.0});

  e.boundary_surface = [metric, r_b, n](int grid_n) {
    return EmbeddedSurface::coordinate_sphere(metric, r_b, default_sphere_grid(n - 1, grid_n),
                                              NormalChoice::into_manifold());
  };
  e.level_surface = [metric, n](double r, int grid_n) {
    auto radial = [](const ChartPoint& p) { return Eigen::VectorXd(p.coords); };
    return EmbeddedSurface::coordinate_sphere(metric, r, default_sphere_grid(n - 1, grid_n),
                                              NormalChoice::user_vector(radial));
  };
  e.foliation_base = e.boundary_surface;

  e.expectations.push_back({"scalar_curvature", 0.0, 1e-8, Provenance::Paper,
                            scalar_curvature_probe(metric, e.sample_box, 0.0)});
  e.expectations.push_back({"boundary_mean_curvature", 0.0, 1e-6, Provenance::Paper,
                            boundary_mean_curvature_probe(e.boundary_surface, 0.0)});
  e.expectations.push_back({"boundary_theta_time_symmetric", 0.0, 1e-6, Provenance::Paper,
                            boundary_theta_probe(e.boundary_surface, metric, 0.0, 0.0)});
  return e;
}

// --- AdS Schwarzschild ---------------------------------------------------------

namespace {

/// Appends the round-sphere block r2_factor * g_{S^{n-1}} to g starting at
/// coordinate 1; polar angles x[1..n-2], azimuth x[n-1].
template <class S>
void fill_sphere_block(SymMat<S>& g, std::span<const S> x, int n, S w) {
  for (int i = 1; i < n; ++i) {
    g(i, i) = w;
    if (i + 1 < n) {
      S s = sin(x[i]);
      w = w * s * s;
    }
  }
}

bool sphere_angles_ok(const ChartPoint& p, int n) {
  for (int i = 1; i + 1 < n; ++i) {
    const double s = std::sin(p.coords[i]);
    if (!(std::abs(s) > 1e-9)) return false;
  }
  return true;
}

}  // namespace

CatalogEntry make_ads_schwarzschild(int n, double m) {
  if (n < 3 || n > kMaxDim) throw InvalidParam("ads_schwarzschild: need 3 <= n <= 6");
  if (!(m > 0.0)) throw InvalidParam("ads_schwarzschild: need m > 0");

  const double r_m = std::pow(2.0 * m, 1.0 / (n - 2));

  MetricField metric(
      n,
      [n, m](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        S r = x[0];
        S v = 1.0 + r * r - (2.0 * m) / pow(r, double(n - 2));
        SymMat<S> g(n);
        g(0, 0) = 1.0 / v;
        fill_sphere_block(g, x, n, r * r);
        return g;
      },
      [r_m, n](const ChartPoint& p) {
        return p.coords[0] >= r_m * (1.0 - 1e-12) && sphere_angles_ok(p, n);
      },
      "ads_schwarzschild");

  CatalogEntry e;
  e.family = "ads_schwarzschild";
  e.params = {{"n", double(n)}, {"m", m}};
  e.name = "ads_schwarzschild:n=" + std::to_string(n) + ",m=" + format_double(m);
  e.metric = metric;
  e.boundary_coordinate = r_m;
  e.boundary_locus = "r = (2m)^{1/(n-2)} = " + format_double(r_m);

  e.sample_box.push_back({r_m + 0.2, r_m + 2.2});
  for (int i = 1; i + 1 < n; ++i) e.sample_box.push_back({0.4, std::numbers::pi - 0.4});
  e.sample_box.push_back({0.2, 6.0});

  e.boundary_surface = [metric, r_m, n](int grid_n) {
    return EmbeddedSurface::coordinate_level_set(metric, r_m, default_sphere_grid(n - 1, grid_n),
                                                 NormalChoice::into_manifold());
  };
  e.level_surface = [metric, n](double r, int grid_n) {
    auto radial = [nn = n](const ChartPoint&) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(nn);
      v[0] = 1.0;
      return v;
    };
    return EmbeddedSurface::coordinate_level_set(metric, r, default_sphere_grid(n - 1, grid_n),
                                                 NormalChoice::user_vector(radial));
  };
  e.foliation_base = e.boundary_surface;

  // sigma = log r chart
  {
    MetricField alt(
        n,
        [n, m](auto x) {
          using S = std::remove_cvref_t<decltype(x[0])>;
          S r = exp(x[0]);
          S v = 1.0 + r * r - (2.0 * m) / pow(r, double(n - 2));
          SymMat<S> g(n);
          g(0, 0) = (r * r) / v;
          fill_sphere_block(g, x, n, r * r);
          return g;
        },
        [r_m, n](const ChartPoint& p) {
          return p.coords[0] >= std::log(r_m) - 1e-12 && sphere_angles_ok(p, n);
        },
        "ads_schwarzschild_log_radial");
    e.reparam = ReparamChart{alt, [](const ChartPoint& p) {
                               ChartPoint q = p;
                               q.coords[0] = std::log(p.coords[0]);
                               return q;
                             }};
  }

  e.expectations.push_back({"scalar_curvature", double(-n * (n - 1)), 1e-8,
                            Provenance::Paper,
                            scalar_curvature_probe(metric, e.sample_box, double(-n * (n - 1)))});
  e.expectations.push_back({"boundary_mean_curvature", double(n - 1), 1e-6,
                            Provenance::Paper,
                            boundary_mean_curvature_probe(e.boundary_surface, double(n - 1))});
  e.expectations.push_back({"boundary_theta_K_minus_g", 0.0, 1e-6, Provenance::Paper,
                            boundary_theta_probe(e.boundary_surface, metric, -1.0, 0.0)});
  e.expectations.push_back({"V_at_horizon_minus_rm_sq", 0.0, 1e-13, Provenance::Trivial,
                            [r_m, m, n]() {
                              const double v =
                                  1.0 + r_m * r_m - 2.0 * m / std::pow(r_m, double(n - 2));
                              return v - r_m * r_m;
                            }});
  return e;
}

// --- toroidal Kottler -----------------------------------------------------------

CatalogEntry make_toroidal_kottler(int n, double m) {
  if (n < 3 || n > kMaxDim) throw InvalidParam("kottler: need 3 <= n <= 6");
  if (!(m > 0.0)) throw InvalidParam("kottler: need m > 0");

  const double r0 = std::pow(2.0 * m, 1.0 / n);

  MetricField metric(
      n,
      [n, m](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        S r = x[0];
        S v = r * r - (2.0 * m) / pow(r, double(n - 2));
        SymMat<S> g(n);
        g(0, 0) = 1.0 / v;
        for (int i = 1; i < n; ++i) g(i, i) = r * r;
        return g;
      },
      [r0](const ChartPoint& p) { return p.coords[0] > r0 * (1.0 + 1e-12); },
      "toroidal_kottler");

  CatalogEntry e;
  e.family = "kottler";
  e.params = {{"n", double(n)}, {"m", m}};
  e.name = "kottler:n=" + std::to_string(n) + ",m=" + format_double(m);
  e.metric = metric;
  e.boundary_coordinate = r0;
  e.boundary_locus = "r = (2m)^{1/n} = " + format_double(r0) + " (chart degenerates; V(r0) = 0)";

  e.sample_box.push_back({1.15 * r0 + 0.05, 3.0 * r0});
  for (int i = 1; i < n; ++i) e.sample_box.push_back({0.0, kTwoPi});

  e.level_surface = [metric, n](double r, int grid_n) {
    auto radial = [nn = n](const ChartPoint&) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(nn);
      v[0] = 1.0;
      return v;
    };
    return EmbeddedSurface::coordinate_level_set(metric, r, default_torus_grid(n - 1, grid_n),
                                                 NormalChoice::user_vector(radial));
  };
  e.foliation_base = [level = e.level_surface, r0](int grid_n) {
    return level(1.1 * r0, grid_n);
  };

  {
    MetricField alt(
        n,
        [n, m](auto x) {
          using S = std::remove_cvref_t<decltype(x[0])>;
          S r = exp(x[0]);
          S v = r * r - (2.0 * m) / pow(r, double(n - 2));
          SymMat<S> g(n);
          g(0, 0) = (r * r) / v;
          for (int i = 1; i < n; ++i) g(i, i) = r * r;
          return g;
        },
        [r0](const ChartPoint& p) { return p.coords[0] > std::log(r0) + 1e-13; },
        "toroidal_kottler_log_radial");
    e.reparam = ReparamChart{alt, [](const ChartPoint& p) {
                               ChartPoint q = p;
                               q.coords[0] = std::log(p.coords[0]);
                               return q;
                             }};
  }

  e.expectations.push_back({"scalar_curvature", double(-n * (n - 1)), 1e-8,
                            Provenance::Paper,
                            scalar_curvature_probe(metric, e.sample_box, double(-n * (n - 1)))});
  e.expectations.push_back({"V_at_r0", 0.0, 1e-13, Provenance::Trivial, [r0, m, n]() {
                              return r0 * r0 - 2.0 * m / std::pow(r0, double(n - 2));
                            }});
  // H(r) -> 0 at the degenerate boundary, by one-sided extrapolation.
  e.expectations.push_back(
      {"boundary_mean_curvature_limit", 0.0, 1e-5, Provenance::Derived,
       [level = e.level_surface, r0]() {
         std::vector<double> h_vals;
         for (int k = 0; k <= 4; ++k) {
           const double r = r0 * (1.0 + 5e-3 * std::pow(2.0, -k));
           EmbeddedSurface s = level(r, 8);
           h_vals.push_back(surface_point_geometry(s, s.grid().node(0)).mean_curvature);
         }
         return aitken_limit(std::move(h_vals));
       }});
  // theta of the slice r = 2 r0 with K = -g: (n-1)(sqrt(1 - 2^{-n}) - 1).
  {
    const double r_ref = 2.0 * r0;
    const double closed = (n - 1) * (std::sqrt(1.0 - std::pow(2.0, -n)) - 1.0);
    e.expectations.push_back({"theta_at_2r0_K_minus_g", closed, 1e-6, Provenance::Derived,
                              boundary_theta_probe(
                                  [level = e.level_surface, r_ref](int grid_n) {
                                    return level(r_ref, grid_n > 0 ? grid_n : 8);
                                  },
                                  metric, -1.0, closed)});
  }
  return e;
}

// --- warped products -------------------------------------------------------------

MetricField flat_torus_metric(int k, const std::vector<double>& radii) {
  if (k < 1 || k > kMaxDim) throw InvalidParam("flat_torus_metric: bad dimension");
  std::vector<double> r2(static_cast<std::size_t>(k), 1.0);
  for (std::size_t i = 0; i < radii.size() && i < r2.size(); ++i) {
    if (!(radii[i] > 0.0)) throw InvalidParam("flat_torus_metric: radii must be positive");
    r2[i] = radii[i] * radii[i];
  }
  return MetricField(
      k,
      [k, r2](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        (void)x;
        SymMat<S> g(k);
        for (int i = 0; i < k; ++i) g(i, i) = S(r2[static_cast<std::size_t>(i)]);
        return g;
      },
      [](const ChartPoint&) { return true; }, "flat_torus");
}

CatalogEntry make_warped_product(const MetricField& fiber, double sign, double t_max) {
  const int k = fiber.dim();
  if (k < 2) throw InvalidParam("make_warped_product: fiber dimension must be >= 2");
  if (!(t_max > 0.0)) throw InvalidParam("make_warped_product: T must be > 0");
  if (sign != -1.0 && sign != 0.0 && sign != 1.0)
    throw InvalidParam("make_warped_product: sign must be -1, 0 or +1");
  const int n = k + 1;

  MetricField metric(
      n,
      [k, sign, fib = fiber.component_field()](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        SymMat<S> h = fib.template eval_components<S>(std::span<const S>(x.data() + 1, k));
        S w = exp(x[0] * (2.0 * sign));
        SymMat<S> g(k + 1);
        g(0, 0) = S(1.0);
        for (int i = 0; i < k; ++i)
          for (int j = i; j < k; ++j) g(i + 1, j + 1) = w * h(i, j);
        return g;
      },
      [t_max](const ChartPoint& p) {
        return p.coords[0] >= -1e-12 && p.coords[0] < t_max;
      },
      "warped_product");

  CatalogEntry e;
  e.family = "warped";
  e.params = {{"eps", sign}, {"T", t_max}, {"k", double(k)}};
  e.name = "warped:eps=" + format_double(sign) + ",T=" + format_double(t_max) +
           ",k=" + std::to_string(k);
  e.metric = metric;
  e.boundary_coordinate = 0.0;
  e.boundary_locus = "t = 0";

  e.sample_box.push_back({0.05, 0.9 * t_max});
  for (int i = 0; i < k; ++i) e.sample_box.push_back({0.0, kTwoPi});

  e.boundary_surface = [metric, k](int grid_n) {
    return EmbeddedSurface::coordinate_level_set(metric, 0.0, default_torus_grid(k, grid_n),
                                                 NormalChoice::into_manifold());
  };
  e.level_surface = [metric, k, n](double t, int grid_n) {
    auto increasing_t = [nn = n](const ChartPoint&) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(nn);
      v[0] = 1.0;
      return v;
    };
    return EmbeddedSurface::coordinate_level_set(metric, t, default_torus_grid(k, grid_n),
                                                 NormalChoice::user_vector(increasing_t));
  };
  e.foliation_base = e.boundary_surface;

  e.profile = WarpedProfile{
      ScalarField(1,
                  [sign](auto x) {
                    return exp(x[0] * sign);
                  }),
      fiber, sign};

  // t = 2 sigma chart
  {
    MetricField alt(
        n,
        [k, sign, fib = fiber.component_field()](auto x) {
          using S = std::remove_cvref_t<decltype(x[0])>;
          SymMat<S> h = fib.template eval_components<S>(std::span<const S>(x.data() + 1, k));
          S w = exp(x[0] * (4.0 * sign));
          SymMat<S> g(k + 1);
          g(0, 0) = S(4.0);
          for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) g(i + 1, j + 1) = w * h(i, j);
          return g;
        },
        [t_max](const ChartPoint& p) {
          return p.coords[0] >= -1e-12 && p.coords[0] < 0.5 * t_max;
        },
        "warped_product_half_chart");
    e.reparam = ReparamChart{alt, [](const ChartPoint& p) {
                               ChartPoint q = p;
                               q.coords[0] = 0.5 * p.coords[0];
                               return q;
                             }};
  }

  // Slice second fundamental form A_t = sign * h_t gives H = sign (n-1).
  e.expectations.push_back(
      {"slice_mean_curvature", sign * (n - 1), 1e-8,
       sign == 1.0 ? Provenance::Paper : Provenance::Derived,
       [level = e.level_surface, t_max]() {
         EmbeddedSurface s = level(0.35 * t_max, 8);
         std::vector<double> vals;
         for (int j = 0; j < 5; ++j) {
           const std::size_t idx = (s.grid().size() * static_cast<std::size_t>(j)) / 5;
           vals.push_back(surface_point_geometry(s, s.grid().node(idx)).mean_curvature);
         }
         double out = vals.front();
         for (double v : vals)
           if (std::abs(v) > std::abs(out)) out = v;
         return out;
       }});
  if (sign != 0.0) {
    e.expectations.push_back({"sectional_curvature", -1.0, 1e-8, Provenance::Paper,
                              sectional_probe(metric, e.sample_box, -1.0)});
  } else {
    e.expectations.push_back({"scalar_curvature", 0.0, 1e-8, Provenance::Trivial,
                              scalar_curvature_probe(metric, e.sample_box, 0.0)});
  }
  return e;
}

CatalogEntry make_warped_product(int fiber_dim, double sign, double t_max) {
  return make_warped_product(flat_torus_metric(fiber_dim, {}), sign, t_max);
}

// --- hyperbolic cap ----------------------------------------------------------------

CatalogEntry make_hyperbolic_cap(int n, double r_max) {
  if (n < 3 || n > kMaxDim) throw InvalidParam("cap: need 3 <= n <= 6");
  if (!(r_max > 0.0)) throw InvalidParam("cap: need R > 0");

  MetricField metric(
      n,
      [n](auto x) {
        using S = std::remove_cvref_t<decltype(x[0])>;
        S t = x[0];
        S sh = sinh(t);
        SymMat<S> g(n);
        g(0, 0) = S(1.0);
        fill_sphere_block(g, x, n, sh * sh);
        return g;
      },
      [r_max, n](const ChartPoint& p) {
        return p.coords[0] > 1e-8 && p.coords[0] <= r_max * (1.0 + 1e-12) &&
               sphere_angles_ok(p, n);
      },
      "hyperbolic_cap");

  CatalogEntry e;
  e.family = "cap";
  e.params = {{"n", double(n)}, {"R", r_max}};
  e.name = "cap:n=" + std::to_string(n) + ",R=" + format_double(r_max);
  e.metric = metric;
  e.boundary_coordinate = r_max;
  e.boundary_locus = "t = R (cone point t = 0 excluded from the chart)";

  const double lo = std::min(0.25, 0.3 * r_max);
  e.sample_box.push_back({lo, r_max - std::min(0.05, 0.05 * r_max)});
  for (int i = 1; i + 1 < n; ++i) e.sample_box.push_back({0.4, std::numbers::pi - 0.4});
  e.sample_box.push_back({0.2, 6.0});

  e.boundary_surface = [metric, r_max, n](int grid_n) {
    return EmbeddedSurface::coordinate_level_set(metric, r_max,
                                                 default_sphere_grid(n - 1, grid_n),
                                                 NormalChoice::into_manifold());
  };
  e.level_surface = [metric, n](double t, int grid_n) {
    auto increasing_t = [nn = n](const ChartPoint&) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(nn);
      v[0] = 1.0;
      return v;
    };
    return EmbeddedSurface::coordinate_level_set(metric, t, default_sphere_grid(n - 1, grid_n),
                                                 NormalChoice::user_vector(increasing_t));
  };
  e.foliation_base = e.boundary_surface;

  e.profile = WarpedProfile{ScalarField(1,
                                        [](auto x) {
                                          return sinh(x[0]);
                                        }),
                            MetricField{}, 0.0};

  ScalarField f_cosh(n, [](auto x) {
    return cosh(x[0]);
  });

  e.expectations.push_back({"scalar_curvature", double(-n * (n - 1)), 1e-8,
                            Provenance::Derived,
                            scalar_curvature_probe(metric, e.sample_box, double(-n * (n - 1)))});
  e.expectations.push_back({"sectional_curvature", -1.0, 1e-8, Provenance::Derived,
                            sectional_probe(metric, e.sample_box, -1.0)});
  e.expectations.push_back({"obata_residual_cosh", 0.0, 1e-8, Provenance::Paper,
                            obata_residual_probe(metric, f_cosh, e.sample_box)});
  return e;
}

// --- registry -----------------------------------------------------------------------

const std::vector<FamilyInfo>& catalog_families() {
  static const std::vector<FamilyInfo> families{
      {"spatial_schwarzschild",
       "time-symmetric slice with S = 0 and minimal horizon (isotropic chart)",
       "spatial_schwarzschild:n=3,m=1"},
      {"ads_schwarzschild",
       "S = -n(n-1), boundary mean curvature n-1, boundary is a MOTS for K = -g",
       "ads_schwarzschild:n=3,m=0.5"},
      {"kottler",
       "toroidal Kottler: S = -n(n-1); slices above r0 are outer trapped for K = -g",
       "kottler:n=3,m=0.5"},
      {"warped", "dt^2 + e^{2 eps t} h over a flat torus; the splitting model space",
       "warped:eps=1,T=2,k=2"},
      {"cap", "hyperbolic cap dt^2 + sinh^2 t g_{S^{n-1}}; cosh t solves Obata",
       "cap:n=3,R=1"},
  };
  return families;
}

namespace {

double parse_number(const std::string& text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidParam("bad numeric value '" + text + "' in metric spec");
  return v;
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw InvalidParam("expected key=value in metric spec, got '" + item + "'");
    out[item.substr(0, eq)] = parse_number(item.substr(eq + 1));
    pos = comma + 1;
  }
  return out;
}

int int_param(const std::map<std::string, double>& p, const std::string& key, int dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  const double v = it->second;
  if (v != std::floor(v)) throw InvalidParam("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

double real_param(const std::map<std::string, double>& p, const std::string& key,
                  double dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

void reject_unknown_keys(const std::map<std::string, double>& p,
                         std::initializer_list<const char*> known) {
  for (const auto& [key, value] : p) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw InvalidParam("unknown parameter '" + key + "' in metric spec");
  }
}

}  // namespace

CatalogEntry parse_metric_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::map<std::string, double> p =
      colon == std::string::npos ? std::map<std::string, double>{}
                                 : parse_params(spec.substr(colon + 1));

  if (family == "spatial_schwarzschild") {
    reject_unknown_keys(p, {"n", "m"});
    return make_spatial_schwarzschild(int_param(p, "n", 3), real_param(p, "m", 1.0));
  }
  if (family == "ads_schwarzschild") {
    reject_unknown_keys(p, {"n", "m"});
    return make_ads_schwarzschild(int_param(p, "n", 3), real_param(p, "m", 0.5));
  }
  if (family == "kottler") {
    reject_unknown_keys(p, {"n", "m"});
    return make_toroidal_kottler(int_param(p, "n", 3), real_param(p, "m", 0.5));
  }
  if (family == "warped") {
    reject_unknown_keys(p, {"eps", "T", "k"});
    return make_warped_product(int_param(p, "k", 2), real_param(p, "eps", 1.0),
                               real_param(p, "T", 2.0));
  }
  if (family == "cap") {
    reject_unknown_keys(p, {"n", "R"});
    return make_hyperbolic_cap(int_param(p, "n", 3), real_param(p, "R", 1.0));
  }
  throw UnknownFamily("unknown metric family '" + family + "'");
}

double extrapolated_boundary_mean_curvature(const CatalogEntry& entry, double step) {
  if (!entry.level_surface)
    throw InvalidParam("extrapolated_boundary_mean_curvature: no level surfaces");
  const double c = entry.boundary_coordinate;
  std::vector<double> h_vals;
  for (int k = 0; k <= 4; ++k) {
    const double r = c * (1.0 + step * std::pow(2.0, -k));
    EmbeddedSurface s = entry.level_surface(r, 8);
    h_vals.push_back(surface_point_geometry(s, s.grid().node(0)).mean_curvature);
  }
  return aitken_limit(std::move(h_vals));
}

}  // namespace motskit
