#pragma once

/**
 * @file jet.hpp
 * @brief Second-order forward jets along a single input axis.
 *
 * A Jet2 carries (f, f', f'') with respect to one active variable s.
 * Arithmetic propagates the triple through the first- and second-order
 * chain and product rules, so any expression built from the combinators
 * below yields exact value, slope and curvature in one pass.
 */

#include <cmath>

namespace gridlab {

template <class T = double>
struct Jet2 {
  T v{0};   // value
  T d1{0};  // first derivative along the active axis
  T d2{0};  // second derivative along the active axis

  constexpr Jet2() = default;
  constexpr Jet2(T value) : v(value) {}  // NOLINT: constant lifting
  constexpr Jet2(T value, T first, T second) : v(value), d1(first), d2(second) {}

  static constexpr Jet2 constant(T c) { return {c, T{0}, T{0}}; }
  static constexpr Jet2 variable(T s) { return {s, T{1}, T{0}}; }

  constexpr bool operator==(const Jet2&) const = default;

  constexpr Jet2& operator+=(const Jet2& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  constexpr Jet2& operator-=(const Jet2& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  constexpr Jet2& operator*=(T c) {
    v *= c;
    d1 *= c;
    d2 *= c;
    return *this;
  }
};

template <class T>
constexpr Jet2<T> operator+(Jet2<T> a, const Jet2<T>& b) {
  return a += b;
}
template <class T>
constexpr Jet2<T> operator-(Jet2<T> a, const Jet2<T>& b) {
  return a -= b;
}
template <class T>
constexpr Jet2<T> operator-(const Jet2<T>& a) {
  return {-a.v, -a.d1, -a.d2};
}
template <class T>
constexpr Jet2<T> operator+(Jet2<T> a, T c) {
  a.v += c;
  return a;
}
template <class T>
constexpr Jet2<T> operator+(T c, Jet2<T> a) {
  a.v += c;
  return a;
}
template <class T>
constexpr Jet2<T> operator-(Jet2<T> a, T c) {
  a.v -= c;
  return a;
}

// scale
template <class T>
constexpr Jet2<T> operator*(Jet2<T> a, T c) {
  return a *= c;
}
template <class T>
constexpr Jet2<T> operator*(T c, Jet2<T> a) {
  return a *= c;
}

// (uw)'' = u w'' + 2 u' w' + u'' w
template <class T>
constexpr Jet2<T> operator*(const Jet2<T>& u, const Jet2<T>& w) {
  return {u.v * w.v, u.v * w.d1 + u.d1 * w.v, u.v * w.d2 + T{2} * u.d1 * w.d1 + u.d2 * w.v};
}

/// Applies a scalar function given f(u), f'(u), f''(u) at u.v.
template <class T>
constexpr Jet2<T> chain(const Jet2<T>& u, T f, T df, T ddf) {
  return {f, df * u.d1, df * u.d2 + ddf * u.d1 * u.d1};
}

template <class T>
constexpr Jet2<T> square(const Jet2<T>& u) {
  return {u.v * u.v, T{2} * u.v * u.d1, T{2} * (u.v * u.d2 + u.d1 * u.d1)};
}

template <class T>
Jet2<T> tanh(const Jet2<T>& u) {
  using std::tanh;
  const T f = tanh(u.v);
  const T s = T{1} - f * f;
  return {f, s * u.d1, s * u.d2 - T{2} * f * s * u.d1 * u.d1};
}

template <class T>
Jet2<T> exp(const Jet2<T>& u) {
  using std::exp;
  const T e = exp(u.v);
  return chain(u, e, e, e);
}

template <class T>
Jet2<T> sin(const Jet2<T>& u) {
  using std::cos;
  using std::sin;
  const T s = sin(u.v);
  return chain(u, s, cos(u.v), -s);
}

template <class T>
Jet2<T> cos(const Jet2<T>& u) {
  using std::cos;
  using std::sin;
  const T c = cos(u.v);
  return chain(u, c, -sin(u.v), -c);
}

template <class T>
bool isfinite(const Jet2<T>& u) {
  using std::isfinite;
  return isfinite(u.v) && isfinite(u.d1) && isfinite(u.d2);
}

using Jet = Jet2<double>;

}  // namespace gridlab
