#include "odeinv/vfjet.hpp"

#include <mutex>

namespace odeinv {

namespace {
using P = JetPolynomial;
P u(int i, int m = 0, int n = 0) { return P::u(i, m, n); }
P X(int i, int a = 0, int b = 0) { return P::X(i, a, b); }
} // namespace

JetPolynomial psi_component(int i) {
  switch (i) {
  case 1:
    return -(u(1, 1, 0) * X(1)) - u(1, 0, 1) * X(2) - P(2) * u(1) * X(1, 1, 0) +
           u(1) * X(2, 0, 1) - u(2) * X(2, 1, 0) + X(2, 2, 0);
  case 2:
    return -(u(2, 1, 0) * X(1)) - u(2, 0, 1) * X(2) - P(3) * u(1) * X(1, 0, 1) -
           u(2) * X(1, 1, 0) - P(2) * u(3) * X(2, 1, 0) - X(1, 2, 0) + P(2) * X(2, 1, 1);
  case 3:
    return -(u(3, 1, 0) * X(1)) - u(3, 0, 1) * X(2) - P(2) * u(2) * X(1, 0, 1) -
           u(3) * X(2, 0, 1) - P(3) * u(4) * X(2, 1, 0) - P(2) * X(1, 1, 1) + X(2, 0, 2);
  case 4:
    return -(u(4, 1, 0) * X(1)) - u(4, 0, 1) * X(2) - u(3) * X(1, 0, 1) + u(4) * X(1, 1, 0) -
           P(2) * u(4) * X(2, 0, 1) - X(1, 0, 2);
  default:
    throw std::out_of_range("psi component index must be 1..4");
  }
}

const std::vector<PsiEntry> &psi_symbolic(int k) {
  static constexpr int kmax = 3;
  static std::array<std::vector<PsiEntry>, kmax + 1> tables;
  static std::once_flag once;
  if (k < 0 || k > kmax)
    throw std::out_of_range("psi_symbolic supports 0 <= k <= 3");
  std::call_once(once, [] {
    // derivs[i][tri_index(m,n)] = D_(m,n) psi^i
    std::array<std::vector<P>, 4> derivs;
    for (int i = 0; i < 4; ++i) {
      derivs[i].resize(tri_size(kmax));
      derivs[i][0] = psi_component(i + 1);
      for (int d = 1; d <= kmax; ++d)
        for (int n = 0; n <= d; ++n) {
          int m = d - n;
          derivs[i][tri_index(m, n)] = m > 0 ? total_derivative(derivs[i][tri_index(m - 1, n)], 1)
                                             : total_derivative(derivs[i][tri_index(m, n - 1)], 2);
        }
    }
    for (int kk = 0; kk <= kmax; ++kk)
      for (int i = 0; i < 4; ++i)
        for (int d = 0; d <= kk; ++d)
          for (int n = 0; n <= d; ++n)
            tables[kk].push_back({i + 1, d - n, n, derivs[i][tri_index(d - n, n)]});
  });
  return tables[k];
}

JetPolynomial to_jet_polynomial(const CoeffExpr &e) {
  auto deg = polynomial_degree(e);
  if (!deg)
    throw std::invalid_argument("expression is not a polynomial: " + to_string(e));
  TaylorJet2 t = taylor(e, Rational(0), Rational(0), *deg);
  JetPolynomial p;
  for (int d = 0; d <= *deg; ++d)
    for (int n = 0; n <= d; ++n) {
      int m = d - n;
      Monomial mono;
      if (m)
        mono.emplace_back(JetVar::base(1), m);
      if (n)
        mono.emplace_back(JetVar::base(2), n);
      p.add_term(mono, t.coeff(m, n));
    }
  return p;
}

ProlongedField prolong_vector_field(const CoeffExpr &X1, const CoeffExpr &X2, int k) {
  if (k < 0 || k > 3)
    throw std::out_of_range("prolongation supported for 0 <= k <= 3");
  ProlongedField pf;
  pf.order = k;
  pf.X1 = X1;
  pf.X2 = X2;
  std::array<JetPolynomial, 2> base{to_jet_polynomial(X1), to_jet_polynomial(X2)};
  // X^r_(a,b) -> d^a_x d^b_y X^r as a polynomial in x^1, x^2
  std::map<JetVar, JetPolynomial> cache;
  auto rule = [&](JetVar v) -> std::optional<JetPolynomial> {
    if (v.kind() != JetVar::Kind::Field)
      return std::nullopt;
    auto it = cache.find(v);
    if (it != cache.end())
      return it->second;
    JetPolynomial q = base[v.index() - 1];
    for (int a = 0; a < v.m(); ++a)
      q = partial_derivative(q, JetVar::base(1));
    for (int b = 0; b < v.n(); ++b)
      q = partial_derivative(q, JetVar::base(2));
    cache.emplace(v, q);
    return q;
  };
  pf.components[JetVar::base(1)] = base[0];
  pf.components[JetVar::base(2)] = base[1];
  for (const auto &e : psi_symbolic(k)) {
    JetVar coord = JetVar::fiber(e.i, e.m, e.n);
    JetPolynomial psi = substitute(e.poly, rule);
    JetPolynomial full = psi + base[0] * JetPolynomial::variable(coord.shifted(1)) +
                         base[1] * JetPolynomial::variable(coord.shifted(2));
    pf.psi[coord] = std::move(psi);
    pf.components[coord] = std::move(full);
  }
  return pf;
}

std::map<JetVar, JetPolynomial> commutator(const ProlongedField &X, const ProlongedField &Y) {
  if (X.order != Y.order)
    throw std::invalid_argument("prolonged fields of different orders");
  std::map<JetVar, JetPolynomial> out;
  for (const auto &[c, yc] : Y.components) {
    JetPolynomial acc;
    for (const auto &[d, xd] : X.components)
      acc += xd * partial_derivative(yc, d);
    const JetPolynomial &xc = X.components.at(c);
    for (const auto &[d, yd] : Y.components)
      acc -= yd * partial_derivative(xc, d);
    out[c] = std::move(acc);
  }
  return out;
}

std::pair<CoeffExpr, CoeffExpr> field_bracket(const CoeffExpr &X1, const CoeffExpr &X2,
                                              const CoeffExpr &Y1, const CoeffExpr &Y2) {
  auto comp = [&](const CoeffExpr &Xi, const CoeffExpr &Yi) {
    return X1 * derivative(Yi, 1) + X2 * derivative(Yi, 2) - Y1 * derivative(Xi, 1) -
           Y2 * derivative(Xi, 2);
  };
  return {comp(X1, Y1), comp(X2, Y2)};
}

RFieldJet field_jet(const CoeffExpr &X1, const CoeffExpr &X2, const Rational &x0,
                    const Rational &y0, int m) {
  RFieldJet j(m);
  TaylorJet2 t1 = taylor(X1, x0, y0, m), t2 = taylor(X2, x0, y0, m);
  for (int d = 0; d <= m; ++d)
    for (int b = 0; b <= d; ++b) {
      j.comp(1, d - b, b) = t1.raw_partial(d - b, b);
      j.comp(2, d - b, b) = t2.raw_partial(d - b, b);
    }
  return j;
}

} // namespace odeinv
