#include "odeinv/transform.hpp"

#include <string>
#include <vector>

namespace odeinv {

Mat2 inverse(const Mat2 &m) {
  Rational d = det(m);
  if (d == 0)
    throw SingularMapError("singular linear map");
  return {{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
}

MapJet::MapJet(TaylorJet2 f1, TaylorJet2 f2) : f_{std::move(f1), std::move(f2)} {
  if (f_[0].order() != f_[1].order() || f_[0].x0() != f_[1].x0() || f_[0].y0() != f_[1].y0())
    throw std::invalid_argument("map jet components are incompatible");
}

MapJet MapJet::identity(const Rational &x0, const Rational &y0, int order) {
  return MapJet(TaylorJet2::coordinate(1, x0, y0, order), TaylorJet2::coordinate(2, x0, y0, order));
}

Mat2 MapJet::jacobian() const {
  if (order() < 1)
    throw std::invalid_argument("jacobian needs a map jet of order >= 1");
  return {{{f_[0].coeff(1, 0), f_[0].coeff(0, 1)}, {f_[1].coeff(1, 0), f_[1].coeff(0, 1)}}};
}

MapJet compose(const MapJet &f, const MapJet &g) {
  return MapJet(compose(f.component(1), g.component(1), g.component(2)),
                compose(f.component(2), g.component(1), g.component(2)));
}

MapJet invert_map_jet(const MapJet &f) {
  int m = f.order();
  Mat2 L = inverse(f.jacobian());
  auto [q1, q2] = f.image();
  TaylorJet2 z1 = TaylorJet2::coordinate(1, q1, q2, m), z2 = TaylorJet2::coordinate(2, q1, q2, m);
  auto affine = [&](const TaylorJet2 &e1, const TaylorJet2 &e2, int row) {
    return L[row][0] * e1 + L[row][1] * e2;
  };
  // g0 = p + L^{-1}(z - f(p)); each step g <- g - L^{-1}(f o g - z) gains one order
  TaylorJet2 d1 = z1 - TaylorJet2::constant(q1, q1, q2, m);
  TaylorJet2 d2 = z2 - TaylorJet2::constant(q2, q1, q2, m);
  TaylorJet2 g1 = TaylorJet2::constant(f.x0(), q1, q2, m) + affine(d1, d2, 0);
  TaylorJet2 g2 = TaylorJet2::constant(f.y0(), q1, q2, m) + affine(d1, d2, 1);
  for (int it = 1; it < m; ++it) {
    TaylorJet2 e1 = compose(f.component(1), g1, g2) - z1;
    TaylorJet2 e2 = compose(f.component(2), g1, g2) - z2;
    g1 -= affine(e1, e2, 0);
    g2 -= affine(e1, e2, 1);
  }
  return MapJet(std::move(g1), std::move(g2));
}

PointMap make_point_map(const CoeffExpr &f1, const CoeffExpr &f2, const Rational &x0,
                        const Rational &y0) {
  PointMap pm{f1, f2, x0, y0, {}};
  pm.jacobian = MapJet(taylor(f1, x0, y0, 1), taylor(f2, x0, y0, 1)).jacobian();
  if (det(pm.jacobian) == 0)
    throw SingularMapError("map has a singular jacobian at (" + to_string(x0) + ", " +
                           to_string(y0) + ")");
  return pm;
}

MapJet map_jet(const PointMap &f, int order) { return map_jet(f.f1, f.f2, f.x0, f.y0, order); }

MapJet map_jet(const CoeffExpr &f1, const CoeffExpr &f2, const Rational &x0, const Rational &y0,
               int order) {
  return MapJet(taylor(f1, x0, y0, order), taylor(f2, x0, y0, order));
}

namespace {

// Derivatives of f up to order two, in any ring R with +, -, * and /.
template <class R> struct MapDerivs {
  R f1x, f1y, f2x, f2y, f1xx, f1xy, f1yy, f2xx, f2xy, f2yy;
};

// Under x~ = f1, y~ = f2 and y'' = P(p), with A = f1x + f1y p and
// B = f2x + f2y p, one has y~'' = Q / A^3 where
//   Q = A B0 - B A0 + Delta P(p),  A0 = f1xx + 2 f1xy p + f1yy p^2 (B0 alike).
// Writing p and 1 as linear forms in A and B turns Q into a binary cubic;
// its B^i A^(3-i) coefficient is a~^i o f.
template <class R>
std::array<R, 4> transformed_coefficients(const std::array<R, 4> &a, const MapDerivs<R> &d,
                                          const R &zero) {
  using Poly = std::vector<R>; // in p, index = power
  auto mul = [&](const Poly &u, const Poly &v) {
    Poly w(u.size() + v.size() - 1, zero);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        w[i + j] = w[i + j] + u[i] * v[j];
    return w;
  };
  auto sub = [&](Poly u, const Poly &v) {
    if (u.size() < v.size())
      u.resize(v.size(), zero);
    for (std::size_t i = 0; i < v.size(); ++i)
      u[i] = u[i] - v[i];
    return u;
  };
  R delta = d.f1x * d.f2y - d.f1y * d.f2x;
  Poly A{d.f1x, d.f1y}, B{d.f2x, d.f2y};
  Poly A0{d.f1xx, d.f1xy * Rational(2), d.f1yy}, B0{d.f2xx, d.f2xy * Rational(2), d.f2yy};
  Poly P{delta * a[0], delta * a[1], delta * a[2], delta * a[3]};
  Poly Q = mul(A, B0);
  Q = sub(Q, mul(B, A0));
  for (std::size_t i = 0; i < 4; ++i)
    Q[i] = Q[i] + P[i];
  Q.resize(4, zero);
  // p = al A + be B, 1 = ga A + de B; forms indexed by the power of B
  Poly pform{R(-d.f2x) / delta, d.f1x / delta};
  Poly one{d.f2y / delta, R(-d.f1y) / delta};
  std::array<R, 4> out{zero, zero, zero, zero};
  for (int k = 0; k <= 3; ++k) {
    Poly term{Q[k]};
    for (int i = 0; i < k; ++i)
      term = mul(term, pform);
    for (int i = k; i < 3; ++i)
      term = mul(term, one);
    for (int i = 0; i <= 3; ++i)
      out[i] = out[i] + term[i];
  }
  return out;
}

} // namespace

Equation pushforward_equation(const Equation &eq, const CoeffExpr &f1, const CoeffExpr &f2) {
  MapDerivs<CoeffExpr> d;
  d.f1x = derivative(f1, 1);
  d.f1y = derivative(f1, 2);
  d.f2x = derivative(f2, 1);
  d.f2y = derivative(f2, 2);
  d.f1xx = derivative(d.f1x, 1);
  d.f1xy = derivative(d.f1x, 2);
  d.f1yy = derivative(d.f1y, 2);
  d.f2xx = derivative(d.f2x, 1);
  d.f2xy = derivative(d.f2x, 2);
  d.f2yy = derivative(d.f2y, 2);
  return Equation{transformed_coefficients(eq.a, d, CoeffExpr(0))};
}

Equation pushforward_equation(const Equation &eq, const PointMap &f) {
  return pushforward_equation(eq, f.f1, f.f2);
}

Equation transformed_equation(const Equation &eq, const MapExprs &map) {
  if (!map.g1 || !map.g2)
    throw std::invalid_argument("transformed_equation needs an explicit inverse (g1, g2)");
  Equation composed = pushforward_equation(eq, map.f1, map.f2);
  Equation out;
  for (int i = 0; i < 4; ++i)
    out.a[i] = substitute(composed.a[i], *map.g1, *map.g2);
  return out;
}

RSectionJet lift_section_jet(const MapJet &f, const RSectionJet &theta) {
  int k = theta.order();
  if (f.order() < k + 2)
    throw std::invalid_argument("lifting a " + std::to_string(k) + "-jet needs a " +
                                std::to_string(k + 2) + "-jet of the map");
  if (f.x0() != theta.base(1) || f.y0() != theta.base(2))
    throw std::invalid_argument("map jet and section jet have different base points");
  MapJet fk = f.truncated(k + 2);
  auto d1 = [&](int i, int axis) { return fk.component(i).derivative(axis); };
  MapDerivs<TaylorJet2> d;
  TaylorJet2 f1x = d1(1, 1), f1y = d1(1, 2), f2x = d1(2, 1), f2y = d1(2, 2);
  d.f1xx = f1x.derivative(1);
  d.f1xy = f1x.derivative(2);
  d.f1yy = f1y.derivative(2);
  d.f2xx = f2x.derivative(1);
  d.f2xy = f2x.derivative(2);
  d.f2yy = f2y.derivative(2);
  d.f1x = f1x.truncated(k);
  d.f1y = f1y.truncated(k);
  d.f2x = f2x.truncated(k);
  d.f2y = f2y.truncated(k);
  std::array<TaylorJet2, 4> a = taylor_from_section(theta);
  TaylorJet2 zero(theta.base(1), theta.base(2), k);
  std::array<TaylorJet2, 4> at = transformed_coefficients(a, d, zero);
  MapJet g = invert_map_jet(fk.truncated(std::max(k, 1)));
  std::array<TaylorJet2, 4> out;
  for (int i = 0; i < 4; ++i)
    out[i] = compose(at[i], g.component(1), g.component(2)).truncated(k);
  return section_jet_from_taylor(out, k);
}

RFieldJet push_field_jet(const MapJet &f, const RFieldJet &X) {
  int m = X.order();
  if (f.order() < m + 1)
    throw std::invalid_argument("pushing an " + std::to_string(m) + "-jet of a field needs an " +
                                std::to_string(m + 1) + "-jet of the map");
  MapJet fm = f.truncated(m + 1);
  std::array<TaylorJet2, 2> x;
  for (int i = 1; i <= 2; ++i) {
    x[i - 1] = TaylorJet2(f.x0(), f.y0(), m);
    for (int dgr = 0; dgr <= m; ++dgr)
      for (int b = 0; b <= dgr; ++b)
        x[i - 1].coeff(dgr - b, b) = X.comp(i, dgr - b, b) / (factorial(dgr - b) * factorial(b));
  }
  MapJet g = invert_map_jet(fm.truncated(std::max(m, 1)));
  RFieldJet out(m);
  for (int i = 1; i <= 2; ++i) {
    TaylorJet2 v = fm.component(i).derivative(1) * x[0] + fm.component(i).derivative(2) * x[1];
    TaylorJet2 w = compose(v.truncated(m), g.component(1), g.component(2)).truncated(m);
    for (int dgr = 0; dgr <= m; ++dgr)
      for (int b = 0; b <= dgr; ++b)
        out.comp(i, dgr - b, b) = w.raw_partial(dgr - b, b);
  }
  return out;
}

} // namespace odeinv
