// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <doctest.h>

#include <cmath>

#include "motskit/dual.hpp"

using namespace motskit;

namespace {

// f(x, y) = x^2 sin(y) + e^{x y} / (1 + y^2)
template <class S>
S test_fn(const S& x, const S& y) {
  return x * x * sin(y) + exp(x * y) / (1.0 + y * y);
}

}  // namespace

TEST_CASE("second-order duals reproduce analytic derivatives") {
  const double x = 0.7, y = -0.4;
  std::array<double, 2> raw{x, y};
  auto seeded = seed_second(std::span<const double>(raw.data(), 2));
  Dual2 value = test_fn(seeded[0], seeded[1]);

  const double e = std::exp(x * y);
  const double q = 1.0 + y * y;
  const double fx = 2.0 * x * std::sin(y) + y * e / q;
  const double fy = x * x * std::cos(y) + x * e / q - e * 2.0 * y / (q * q);
  const double fxx = 2.0 * std::sin(y) + y * y * e / q;
  const double fxy = 2.0 * x * std::cos(y) + e / q + x * y * e / q - y * e * 2.0 * y / (q * q);
  const double fyy = -x * x * std::sin(y) + x * x * e / q - 2.0 * x * e * 2.0 * y / (q * q) -
                     e * (2.0 / (q * q) - 8.0 * y * y / (q * q * q));

  CHECK(value.val.val == doctest::Approx(test_fn(x, y)).epsilon(1e-14));
  CHECK(value.der[0].val == doctest::Approx(fx).epsilon(1e-12));
  CHECK(value.der[1].val == doctest::Approx(fy).epsilon(1e-12));
  CHECK(value.der[0].der[0] == doctest::Approx(fxx).epsilon(1e-12));
  CHECK(value.der[1].der[1] == doctest::Approx(fyy).epsilon(1e-12));
  CHECK(value.der[0].der[1] == doctest::Approx(fxy).epsilon(1e-12));
  // mixed partials commute
  CHECK(value.der[0].der[1] == doctest::Approx(value.der[1].der[0]).epsilon(1e-14));
}

TEST_CASE("dual chain rules for the library's transcendental set") {
  const double x = 1.3;
  std::array<double, 1> raw{x};
  auto s = seed_second(std::span<const double>(raw.data(), 1));

  auto check = [&](Dual2 v, double f, double df, double ddf) {
    CHECK(v.val.val == doctest::Approx(f).epsilon(1e-13));
    CHECK(v.der[0].val == doctest::Approx(df).epsilon(1e-12));
    CHECK(v.der[0].der[0] == doctest::Approx(ddf).epsilon(1e-12));
  };

  check(sqrt(s[0]), std::sqrt(x), 0.5 / std::sqrt(x), -0.25 * std::pow(x, -1.5));
  check(log(s[0]), std::log(x), 1.0 / x, -1.0 / (x * x));
  check(pow(s[0], 3.5), std::pow(x, 3.5), 3.5 * std::pow(x, 2.5),
        3.5 * 2.5 * std::pow(x, 1.5));
  check(sinh(s[0]), std::sinh(x), std::cosh(x), std::sinh(x));
  check(cosh(s[0]), std::cosh(x), std::sinh(x), std::cosh(x));
  check(1.0 / s[0], 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

TEST_CASE("finiteness guard sees through nesting") {
  std::array<double, 1> raw{0.0};
  auto s = seed_second(std::span<const double>(raw.data(), 1));
  CHECK(all_finite(s[0]));
  Dual2 bad = log(s[0]);  // log 0 = -inf
  CHECK_FALSE(all_finite(bad));
  CHECK(scalar_value(s[0]) == 0.0);
}
