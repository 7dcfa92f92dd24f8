#pragma once

#include "odeinv/rational.hpp"

#include <cstddef>
#include <vector>

namespace odeinv {

// Position of (m,n) in the triangular layout ordered by total degree, then n.
inline std::size_t tri_index(int m, int n) {
  int d = m + n;
  return static_cast<std::size_t>(d * (d + 1) / 2 + n);
}
inline std::size_t tri_size(int k) { return static_cast<std::size_t>((k + 1) * (k + 2) / 2); }

// Truncated bivariate Taylor polynomial at (x0,y0); c(m,n) is the monomial
// coefficient, i.e. the (m,n) partial divided by m!n!.
class TaylorJet2 {
public:
  TaylorJet2() = default;
  TaylorJet2(Rational x0, Rational y0, int order);

  static TaylorJet2 constant(const Rational &c, Rational x0, Rational y0, int order);
  static TaylorJet2 coordinate(int axis, Rational x0, Rational y0, int order);

  int order() const { return order_; }
  const Rational &x0() const { return x0_; }
  const Rational &y0() const { return y0_; }

  const Rational &coeff(int m, int n) const { return c_[tri_index(m, n)]; }
  Rational &coeff(int m, int n) { return c_[tri_index(m, n)]; }
  const Rational &value() const { return c_[0]; }

  Rational raw_partial(int m, int n) const;

  TaylorJet2 truncated(int k) const;
  // Partial derivative along axis 1 or 2; order drops by one.
  TaylorJet2 derivative(int axis) const;
  TaylorJet2 reciprocal() const;
  TaylorJet2 pow(int n) const;

  TaylorJet2 &operator+=(const TaylorJet2 &o);
  TaylorJet2 &operator-=(const TaylorJet2 &o);
  TaylorJet2 &operator*=(const Rational &s);
  TaylorJet2 operator-() const;
  friend TaylorJet2 operator+(TaylorJet2 a, const TaylorJet2 &b) { return a += b; }
  friend TaylorJet2 operator-(TaylorJet2 a, const TaylorJet2 &b) { return a -= b; }
  friend TaylorJet2 operator*(const TaylorJet2 &a, const TaylorJet2 &b);
  friend TaylorJet2 operator/(const TaylorJet2 &a, const TaylorJet2 &b);
  friend TaylorJet2 operator*(TaylorJet2 a, const Rational &s) { return a *= s; }
  friend TaylorJet2 operator*(const Rational &s, TaylorJet2 a) { return a *= s; }
  friend bool operator==(const TaylorJet2 &a, const TaylorJet2 &b);

private:
  Rational x0_, y0_;
  int order_ = 0;
  std::vector<Rational> c_;
};

// h(g1(z), g2(z)) where h is based at (g1(z0), g2(z0)); result based at z0.
TaylorJet2 compose(const TaylorJet2 &h, const TaylorJet2 &g1, const TaylorJet2 &g2);

} // namespace odeinv
