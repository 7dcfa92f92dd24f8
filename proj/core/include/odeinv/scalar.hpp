#pragma once

#include "odeinv/rational.hpp"

#include <array>
#include <cstddef>
#include <type_traits>

namespace odeinv {

inline bool is_zero(const Rational &q) { return sgn(q) == 0; }
inline bool is_unit(const Rational &q) { return sgn(q) != 0; }
inline const Rational &base_value(const Rational &q) { return q; }

// First-order Taylor scalar: value + sum d[k] eps_k with eps_j eps_k = 0.
// Nesting Taylor1<Taylor1<Q,2>,2> keeps mixed eps_i eta_j terms.
template <class T, std::size_t N> struct Taylor1 {
  T value{};
  std::array<T, N> d{};

  Taylor1() = default;
  Taylor1(const Rational &q) : value(q) {}
  Taylor1(long n) : value(Rational(n)) {}
  Taylor1(T v, std::array<T, N> dv) : value(std::move(v)), d(std::move(dv)) {}

  static Taylor1 variable(const T &v, std::size_t k) {
    Taylor1 r;
    r.value = v;
    r.d[k] = T(Rational(1));
    return r;
  }

  Taylor1 &operator+=(const Taylor1 &o) {
    value += o.value;
    for (std::size_t k = 0; k < N; ++k)
      d[k] += o.d[k];
    return *this;
  }
  Taylor1 &operator-=(const Taylor1 &o) {
    value -= o.value;
    for (std::size_t k = 0; k < N; ++k)
      d[k] -= o.d[k];
    return *this;
  }
  Taylor1 &operator*=(const Taylor1 &o) {
    for (std::size_t k = 0; k < N; ++k)
      d[k] = T(d[k] * o.value) + T(value * o.d[k]);
    value *= o.value;
    return *this;
  }
  Taylor1 &operator/=(const Taylor1 &o) {
    T q = value / o.value;
    for (std::size_t k = 0; k < N; ++k)
      d[k] = T(d[k] - T(q * o.d[k])) / o.value;
    value = q;
    return *this;
  }
  Taylor1 operator-() const {
    Taylor1 r;
    r.value = -value;
    for (std::size_t k = 0; k < N; ++k)
      r.d[k] = -d[k];
    return r;
  }
  friend Taylor1 operator+(Taylor1 a, const Taylor1 &b) { return a += b; }
  friend Taylor1 operator-(Taylor1 a, const Taylor1 &b) { return a -= b; }
  friend Taylor1 operator*(Taylor1 a, const Taylor1 &b) { return a *= b; }
  friend Taylor1 operator/(Taylor1 a, const Taylor1 &b) { return a /= b; }
  friend bool operator==(const Taylor1 &a, const Taylor1 &b) {
    return a.value == b.value && a.d == b.d;
  }
};

template <class T, std::size_t N> bool is_zero(const Taylor1<T, N> &x) {
  if (!is_zero(x.value))
    return false;
  for (const auto &c : x.d)
    if (!is_zero(c))
      return false;
  return true;
}

template <class T, std::size_t N> bool is_unit(const Taylor1<T, N> &x) {
  return is_unit(x.value);
}

template <class T, std::size_t N> const Rational &base_value(const Taylor1<T, N> &x) {
  return base_value(x.value);
}

template <class T> T scalar_from(const Rational &q) { return T(q); }

} // namespace odeinv
