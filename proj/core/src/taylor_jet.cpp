#include "odeinv/taylor_jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace odeinv {

TaylorJet2::TaylorJet2(Rational x0, Rational y0, int order)
    : x0_(std::move(x0)), y0_(std::move(y0)), order_(order), c_(tri_size(order)) {
  if (order < 0)
    throw std::invalid_argument("negative jet order");
}

TaylorJet2 TaylorJet2::constant(const Rational &c, Rational x0, Rational y0, int order) {
  TaylorJet2 t(std::move(x0), std::move(y0), order);
  t.c_[0] = c;
  return t;
}

TaylorJet2 TaylorJet2::coordinate(int axis, Rational x0, Rational y0, int order) {
  TaylorJet2 t(x0, y0, order);
  t.c_[0] = axis == 1 ? x0 : y0;
  if (order >= 1)
    t.coeff(axis == 1 ? 1 : 0, axis == 1 ? 0 : 1) = 1;
  return t;
}

Rational TaylorJet2::raw_partial(int m, int n) const {
  return coeff(m, n) * factorial(m) * factorial(n);
}

TaylorJet2 TaylorJet2::truncated(int k) const {
  if (k > order_)
    throw std::invalid_argument("cannot raise jet order by truncation");
  TaylorJet2 t(x0_, y0_, k);
  std::copy(c_.begin(), c_.begin() + static_cast<long>(tri_size(k)), t.c_.begin());
  return t;
}

TaylorJet2 TaylorJet2::derivative(int axis) const {
  if (order_ == 0)
    throw std::invalid_argument("derivative of a 0-jet");
  TaylorJet2 t(x0_, y0_, order_ - 1);
  for (int d = 0; d <= order_ - 1; ++d)
    for (int n = 0; n <= d; ++n) {
      int m = d - n;
      t.coeff(m, n) = axis == 1 ? coeff(m + 1, n) * (m + 1) : coeff(m, n + 1) * (n + 1);
    }
  return t;
}

static void check_compatible(const TaylorJet2 &a, const TaylorJet2 &b) {
  if (a.order() != b.order() || a.x0() != b.x0() || a.y0() != b.y0())
    throw std::invalid_argument("incompatible jets (order or base point)");
}

TaylorJet2 &TaylorJet2::operator+=(const TaylorJet2 &o) {
  check_compatible(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i)
    c_[i] += o.c_[i];
  return *this;
}

TaylorJet2 &TaylorJet2::operator-=(const TaylorJet2 &o) {
  check_compatible(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i)
    c_[i] -= o.c_[i];
  return *this;
}

TaylorJet2 &TaylorJet2::operator*=(const Rational &s) {
  for (auto &c : c_)
    c *= s;
  return *this;
}

TaylorJet2 TaylorJet2::operator-() const {
  TaylorJet2 t = *this;
  for (auto &c : t.c_)
    c = -c;
  return t;
}

TaylorJet2 operator*(const TaylorJet2 &a, const TaylorJet2 &b) {
  check_compatible(a, b);
  int k = a.order_;
  TaylorJet2 t(a.x0_, a.y0_, k);
  for (int da = 0; da <= k; ++da)
    for (int na = 0; na <= da; ++na) {
      const Rational &ca = a.coeff(da - na, na);
      if (sgn(ca) == 0)
        continue;
      for (int db = 0; db + da <= k; ++db)
        for (int nb = 0; nb <= db; ++nb) {
          const Rational &cb = b.coeff(db - nb, nb);
          if (sgn(cb) == 0)
            continue;
          t.coeff(da - na + db - nb, na + nb) += ca * cb;
        }
    }
  return t;
}

TaylorJet2 TaylorJet2::reciprocal() const {
  if (sgn(c_[0]) == 0)
    throw std::domain_error("division by a jet vanishing at the base point");
  TaylorJet2 h(x0_, y0_, order_);
  Rational inv0 = 1 / c_[0];
  h.c_[0] = inv0;
  for (int d = 1; d <= order_; ++d)
    for (int n = 0; n <= d; ++n) {
      int m = d - n;
      Rational s;
      for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) {
          if (i == 0 && j == 0)
            continue;
          const Rational &g = coeff(i, j);
          if (sgn(g) != 0)
            s += g * h.coeff(m - i, n - j);
        }
      h.coeff(m, n) = -s * inv0;
    }
  return h;
}

TaylorJet2 operator/(const TaylorJet2 &a, const TaylorJet2 &b) { return a * b.reciprocal(); }

TaylorJet2 TaylorJet2::pow(int n) const {
  if (n < 0)
    return reciprocal().pow(-n);
  TaylorJet2 r = constant(Rational(1), x0_, y0_, order_), b = *this;
  while (n) {
    if (n & 1)
      r = r * b;
    n >>= 1;
    if (n)
      b = b * b;
  }
  return r;
}

bool operator==(const TaylorJet2 &a, const TaylorJet2 &b) {
  return a.order_ == b.order_ && a.x0_ == b.x0_ && a.y0_ == b.y0_ && a.c_ == b.c_;
}

TaylorJet2 compose(const TaylorJet2 &h, const TaylorJet2 &g1, const TaylorJet2 &g2) {
  if (g1.order() != g2.order() || g1.x0() != g2.x0() || g1.y0() != g2.y0())
    throw std::invalid_argument("inner map components are incompatible");
  if (g1.value() != h.x0() || g2.value() != h.y0())
    throw std::invalid_argument("inner map does not hit the outer base point");
  int k = std::min(h.order(), g1.order());
  TaylorJet2 d1 = g1.truncated(k), d2 = g2.truncated(k);
  d1.coeff(0, 0) = 0;
  d2.coeff(0, 0) = 0;
  std::vector<TaylorJet2> p1{TaylorJet2::constant(Rational(1), g1.x0(), g1.y0(), k)};
  std::vector<TaylorJet2> p2 = p1;
  for (int i = 1; i <= k; ++i) {
    p1.push_back(p1.back() * d1);
    p2.push_back(p2.back() * d2);
  }
  TaylorJet2 out(g1.x0(), g1.y0(), k);
  for (int d = 0; d <= k; ++d)
    for (int n = 0; n <= d; ++n) {
      const Rational &c = h.coeff(d - n, n);
      if (sgn(c) != 0)
        out += c * (p1[d - n] * p2[n]);
    }
  return out;
}

} // namespace odeinv
