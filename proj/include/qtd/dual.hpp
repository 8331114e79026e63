// Copyright 2026 The qtdpinn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <concepts>
#include <ostream>

#include "qtd/error.hpp"

namespace qtd {

/// Truncated second-order forward-mode number: value, first and second
/// derivative along one seeded direction.
///
/// Every operation applies the chain rule
///   (f o a)'  = f'(a) a'
///   (f o a)'' = f''(a) a'^2 + f'(a) a''
/// so composing primitives yields exact derivatives up to rounding.
struct Dual2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  constexpr Dual2() = default;
  constexpr Dual2(double value) : v(value) {}  // NOLINT: implicit lift
  constexpr Dual2(double value, double first, double second)
      : v(value), d1(first), d2(second) {}

  static constexpr Dual2 variable(double value) { return {value, 1.0, 0.0}; }
  static constexpr Dual2 constant(double value) { return {value, 0.0, 0.0}; }

  constexpr Dual2& operator+=(const Dual2& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  constexpr Dual2& operator-=(const Dual2& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  constexpr Dual2& operator*=(const Dual2& o) {
    *this = Dual2{v * o.v, d1 * o.v + v * o.d1,
                  d2 * o.v + 2.0 * d1 * o.d1 + v * o.d2};
    return *this;
  }
  Dual2& operator/=(const Dual2& o);
};

constexpr Dual2 operator-(const Dual2& a) { return {-a.v, -a.d1, -a.d2}; }
constexpr Dual2 operator+(Dual2 a, const Dual2& b) { return a += b; }
constexpr Dual2 operator-(Dual2 a, const Dual2& b) { return a -= b; }
constexpr Dual2 operator*(Dual2 a, const Dual2& b) { return a *= b; }
constexpr Dual2 operator+(Dual2 a, double b) { return a += Dual2(b); }
constexpr Dual2 operator+(double a, Dual2 b) { return b += Dual2(a); }
constexpr Dual2 operator-(Dual2 a, double b) { return a -= Dual2(b); }
constexpr Dual2 operator-(double a, const Dual2& b) { return Dual2(a) - b; }
constexpr Dual2 operator*(const Dual2& a, double s) {
  return {a.v * s, a.d1 * s, a.d2 * s};
}
constexpr Dual2 operator*(double s, const Dual2& a) { return a * s; }

namespace detail {
// Applies a scalar function given f(v), f'(v), f''(v).
constexpr Dual2 chain(const Dual2& a, double f, double df, double ddf) {
  return {f, df * a.d1, ddf * a.d1 * a.d1 + df * a.d2};
}
}  // namespace detail

inline Dual2 reciprocal(const Dual2& a) {
  if (a.v == 0.0) throw DomainError("division by zero in Dual2");
  const double r = 1.0 / a.v;
  return detail::chain(a, r, -r * r, 2.0 * r * r * r);
}

inline Dual2& Dual2::operator/=(const Dual2& o) {
  *this *= reciprocal(o);
  return *this;
}
inline Dual2 operator/(Dual2 a, const Dual2& b) { return a /= b; }
inline Dual2 operator/(const Dual2& a, double b) {
  if (b == 0.0) throw DomainError("division by zero in Dual2");
  return a * (1.0 / b);
}
inline Dual2 operator/(double a, const Dual2& b) { return a * reciprocal(b); }

inline Dual2 cos(const Dual2& a) {
  const double c = std::cos(a.v), s = std::sin(a.v);
  return detail::chain(a, c, -s, -c);
}
inline Dual2 sin(const Dual2& a) {
  const double c = std::cos(a.v), s = std::sin(a.v);
  return detail::chain(a, s, c, -s);
}
inline Dual2 exp(const Dual2& a) {
  const double e = std::exp(a.v);
  return detail::chain(a, e, e, e);
}
inline Dual2 log(const Dual2& a) {
  if (!(a.v > 0.0)) throw DomainError("log of non-positive Dual2");
  const double r = 1.0 / a.v;
  return detail::chain(a, std::log(a.v), r, -r * r);
}
inline Dual2 sqrt(const Dual2& a) {
  if (!(a.v > 0.0)) throw DomainError("sqrt requires a positive argument");
  const double s = std::sqrt(a.v);
  return detail::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Dual2 tanh(const Dual2& a) {
  const double t = std::tanh(a.v);
  const double dt = 1.0 - t * t;
  return detail::chain(a, t, dt, -2.0 * t * dt);
}
/// arccos on the open interval (-1, 1); the derivative blows up at +-1.
inline Dual2 acos(const Dual2& a) {
  if (!(std::abs(a.v) < 1.0))
    throw DomainError("arccos requires |x| < 1 for dual arguments");
  const double q = 1.0 - a.v * a.v;
  const double sq = std::sqrt(q);
  return detail::chain(a, std::acos(a.v), -1.0 / sq, -a.v / (q * sq));
}
/// a^p for a real exponent p; requires a > 0 unless p is a small integer.
inline Dual2 pow(const Dual2& a, double p) {
  if (p == 0.0) return Dual2(1.0);
  if (!(a.v > 0.0) && p != std::floor(p))
    throw DomainError("pow of non-positive base with non-integer exponent");
  const double f = std::pow(a.v, p);
  const double df = p * std::pow(a.v, p - 1.0);
  const double ddf = p * (p - 1.0) * std::pow(a.v, p - 2.0);
  return detail::chain(a, f, df, ddf);
}

inline std::ostream& operator<<(std::ostream& os, const Dual2& a) {
  return os << "Dual2(" << a.v << ", " << a.d1 << ", " << a.d2 << ")";
}

/// Scalars the simulator and models are generic over.
template <typename S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Dual2>;

inline double value_of(double x) { return x; }
inline double value_of(const Dual2& x) { return x.v; }

/// arccos with the domain contract shared by both scalar kinds: plain reals
/// accept the closed interval, duals only the open one.
inline double checked_acos(double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("arccos requires |x| <= 1");
  return std::acos(x);
}
inline Dual2 checked_acos(const Dual2& x) { return acos(x); }

}  // namespace qtd
