// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>

namespace motskit {

/// Hard cap on the chart dimension. Partial-derivative slots beyond the
/// active dimension stay zero and cost a few multiplications; the toolkit
/// targets n <= 6.
inline constexpr int kMaxDim = 6;

/// Forward-mode dual number over a generic scalar T. Nesting Dual<Dual<double>>
/// carries exact second derivatives; all transcendental overloads below are
/// written against the generic T so the recursion terminates at double.
template <class T>
struct Dual {
  T val{};
  std::array<T, kMaxDim> der{};

  Dual() = default;
  Dual(double v) : val(v) {}  // NOLINT(google-explicit-constructor)
  Dual(T v, int seed_axis) : val(std::move(v)) { der[seed_axis] = T(1.0); }
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual1>;

// --- arithmetic -------------------------------------------------------------

template <class T>
Dual<T> operator-(const Dual<T>& x) {
  Dual<T> r;
  r.val = -x.val;
  for (int i = 0; i < kMaxDim; ++i) r.der[i] = -x.der[i];
  return r;
}

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.val = a.val + b.val;
  for (int i = 0; i < kMaxDim; ++i) r.der[i] = a.der[i] + b.der[i];
  return r;
}

template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.val = a.val - b.val;
  for (int i = 0; i < kMaxDim; ++i) r.der[i] = a.der[i] - b.der[i];
  return r;
}

template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.val = a.val * b.val;
  for (int i = 0; i < kMaxDim; ++i) r.der[i] = a.der[i] * b.val + a.val * b.der[i];
  return r;
}

template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  Dual<T> r;
  r.val = a.val / b.val;
  for (int i = 0; i < kMaxDim; ++i)
    r.der[i] = (a.der[i] - r.val * b.der[i]) / b.val;
  return r;
}

// Mixed double/Dual overloads avoid promoting constants to full duals.
template <class T>
Dual<T> operator+(const Dual<T>& a, double b) {
  Dual<T> r = a;
  r.val = a.val + b;
  return r;
}
template <class T>
Dual<T> operator+(double a, const Dual<T>& b) {
  return b + a;
}
template <class T>
Dual<T> operator-(const Dual<T>& a, double b) {
  Dual<T> r = a;
  r.val = a.val - b;
  return r;
}
template <class T>
Dual<T> operator-(double a, const Dual<T>& b) {
  return -(b - a);
}
template <class T>
Dual<T> operator*(const Dual<T>& a, double b) {
  Dual<T> r;
  r.val = a.val * b;
  for (int i = 0; i < kMaxDim; ++i) r.der[i] = a.der[i] * b;
  return r;
}
template <class T>
Dual<T> operator*(double a, const Dual<T>& b) {
  return b * a;
}
template <class T>
Dual<T> operator/(const Dual<T>& a, double b) {
  return a * (1.0 / b);
}
template <class T>
Dual<T> operator/(double a, const Dual<T>& b) {
  return Dual<T>(a) / b;
}

template <class T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) {
  a = a + b;
  return a;
}
template <class T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) {
  a = a - b;
  return a;
}
template <class T>
Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) {
  a = a * b;
  return a;
}

// --- elementary functions (chain rule against the generic scalar) -----------

// double passthroughs so generic component functions can call unqualified
// math on any supported scalar; constrained templates so they lose overload
// resolution against the global C functions in translation units that mix
// `using namespace motskit` with <cmath>
template <class T>
  requires std::same_as<T, double>
T sqrt(T x) { return std::sqrt(x); }
template <class T>
  requires std::same_as<T, double>
T exp(T x) { return std::exp(x); }
template <class T>
  requires std::same_as<T, double>
T log(T x) { return std::log(x); }
template <class T>
  requires std::same_as<T, double>
T sin(T x) { return std::sin(x); }
template <class T>
  requires std::same_as<T, double>
T cos(T x) { return std::cos(x); }
template <class T>
  requires std::same_as<T, double>
T sinh(T x) { return std::sinh(x); }
template <class T>
  requires std::same_as<T, double>
T cosh(T x) { return std::cosh(x); }
template <class T>
  requires std::same_as<T, double>
T pow(T x, double p) { return std::pow(x, p); }
template <class T>
  requires std::same_as<T, double>
T pow(T x, int p) { return std::pow(x, p); }

namespace dual_detail {
template <class T>
Dual<T> lift(const Dual<T>& x, T fx, T dfx) {
  Dual<T> r;
  r.val = std::move(fx);
  for (int i = 0; i < kMaxDim; ++i) r.der[i] = dfx * x.der[i];
  return r;
}
}  // namespace dual_detail

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T s = sqrt(x.val);
  return dual_detail::lift(x, s, T(0.5) / s);
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.val);
  return dual_detail::lift(x, e, e);
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return dual_detail::lift(x, log(x.val), T(1.0) / x.val);
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return dual_detail::lift(x, sin(x.val), cos(x.val));
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return dual_detail::lift(x, cos(x.val), -sin(x.val));
}

template <class T>
Dual<T> sinh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return dual_detail::lift(x, sinh(x.val), cosh(x.val));
}

template <class T>
Dual<T> cosh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return dual_detail::lift(x, cosh(x.val), sinh(x.val));
}

template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
  using std::pow;
  T xp = pow(x.val, p - 1.0);
  Dual<T> r;
  r.val = xp * x.val;  // x^p
  T dfx = T(p) * xp;
  for (int i = 0; i < kMaxDim; ++i) r.der[i] = dfx * x.der[i];
  return r;
}

template <class T>
Dual<T> pow(const Dual<T>& x, int p) {
  return pow(x, static_cast<double>(p));
}

// --- value extraction and seeding -------------------------------------------

inline double scalar_value(double x) { return x; }
template <class T>
double scalar_value(const Dual<T>& x) {
  return scalar_value(x.val);
}

inline bool all_finite(double x) { return std::isfinite(x); }
template <class T>
bool all_finite(const Dual<T>& x) {
  if (!all_finite(x.val)) return false;
  for (int i = 0; i < kMaxDim; ++i)
    if (!all_finite(x.der[i])) return false;
  return true;
}

/// Coordinates seeded for one level of differentiation: der[i] of slot i is 1.
inline std::array<Dual1, kMaxDim> seed_first(std::span<const double> x) {
  std::array<Dual1, kMaxDim> out{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i].val = x[i];
    out[i].der[i] = 1.0;
  }
  return out;
}

/// Coordinates seeded for two levels. For f evaluated on these:
///   value   = f.val.val
///   d_i f   = f.der[i].val   (== f.val.der[i])
///   d_i d_j = f.der[j].der[i]
inline std::array<Dual2, kMaxDim> seed_second(std::span<const double> x) {
  std::array<Dual2, kMaxDim> out{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i].val.val = x[i];
    out[i].val.der[i] = 1.0;
    out[i].der[i].val = 1.0;
  }
  return out;
}

}  // namespace motskit
