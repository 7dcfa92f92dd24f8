#include "odeinv/jetpoly.hpp"

#include <algorithm>

namespace odeinv {

std::string JetVar::name() const {
  switch (kind()) {
  case Kind::Base:
    return "x" + std::to_string(index());
  case Kind::Fiber:
    return "u" + std::to_string(index()) + "_(" + std::to_string(m()) + "," +
           std::to_string(n()) + ")";
  case Kind::Field:
    return "X" + std::to_string(index()) + "_(" + std::to_string(m()) + "," +
           std::to_string(n()) + ")";
  }
  return "?";
}

JetPolynomial::JetPolynomial(const Rational &c) {
  if (sgn(c) != 0)
    terms_.emplace(Monomial{}, c);
}

JetPolynomial JetPolynomial::variable(JetVar v) {
  JetPolynomial p;
  p.terms_.emplace(Monomial{{v, 1}}, Rational(1));
  return p;
}

int JetPolynomial::order_bound() const {
  int b = -1;
  for (const auto &[mono, c] : terms_)
    for (const auto &[v, e] : mono)
      if (v.kind() == JetVar::Kind::Fiber)
        b = std::max(b, v.order());
  return b;
}

Rational JetPolynomial::coefficient(const Monomial &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void JetPolynomial::add_term(const Monomial &m, const Rational &c) {
  if (sgn(c) == 0)
    return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0)
      terms_.erase(it);
  }
}

JetPolynomial &JetPolynomial::operator+=(const JetPolynomial &o) {
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

JetPolynomial &JetPolynomial::operator-=(const JetPolynomial &o) {
  for (const auto &[m, c] : o.terms_)
    add_term(m, -c);
  return *this;
}

JetPolynomial JetPolynomial::operator-() const {
  JetPolynomial r = *this;
  for (auto &[m, c] : r.terms_)
    c = -c;
  return r;
}

static Monomial mono_mul(const Monomial &a, const Monomial &b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first))
      r.push_back(*i++);
    else if (i == a.end() || j->first < i->first)
      r.push_back(*j++);
    else {
      r.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

JetPolynomial operator*(const JetPolynomial &a, const JetPolynomial &b) {
  JetPolynomial r;
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_)
      r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

std::string to_string(const JetPolynomial &p) {
  if (p.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &[mono, c] : p.terms()) {
    Rational a = abs(c);
    out += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    first = false;
    bool unit = a == 1 && !mono.empty();
    if (!unit)
      out += a.get_str();
    for (std::size_t k = 0; k < mono.size(); ++k) {
      if (k > 0 || !unit)
        out += "*";
      out += mono[k].first.name();
      if (mono[k].second > 1)
        out += "^" + std::to_string(mono[k].second);
    }
  }
  return out;
}

// Derivation applied factor by factor; image(v) is the derivative of v.
template <class F> static JetPolynomial derive(const JetPolynomial &p, F image) {
  JetPolynomial r;
  for (const auto &[mono, c] : p.terms()) {
    for (std::size_t k = 0; k < mono.size(); ++k) {
      JetPolynomial dv = image(mono[k].first);
      if (dv.is_zero())
        continue;
      Monomial rest = mono;
      int e = rest[k].second;
      if (e == 1)
        rest.erase(rest.begin() + static_cast<long>(k));
      else
        rest[k].second -= 1;
      for (const auto &[dm, dc] : dv.terms())
        r.add_term(mono_mul(rest, dm), c * e * dc);
    }
  }
  return r;
}

JetPolynomial total_derivative(const JetPolynomial &p, int j) {
  return derive(p, [j](JetVar v) -> JetPolynomial {
    if (v.kind() == JetVar::Kind::Base)
      return v.index() == j ? JetPolynomial(1) : JetPolynomial();
    return JetPolynomial::variable(v.shifted(j));
  });
}

JetPolynomial partial_derivative(const JetPolynomial &p, JetVar w) {
  return derive(p, [w](JetVar v) { return v == w ? JetPolynomial(1) : JetPolynomial(); });
}

JetPolynomial substitute(const JetPolynomial &p,
                         const std::function<std::optional<JetPolynomial>(JetVar)> &rule) {
  JetPolynomial r;
  for (const auto &[mono, c] : p.terms()) {
    JetPolynomial term(c);
    Monomial kept;
    for (const auto &[v, e] : mono) {
      if (auto img = rule(v)) {
        for (int k = 0; k < e; ++k)
          term = term * *img;
      } else {
        kept.emplace_back(v, e);
      }
    }
    JetPolynomial km;
    km.add_term(kept, Rational(1));
    r += term * km;
  }
  return r;
}

FieldSplit split_field_linear(const JetPolynomial &p) {
  FieldSplit out;
  for (const auto &[mono, c] : p.terms()) {
    std::optional<JetVar> fv;
    Monomial rest;
    for (const auto &[v, e] : mono) {
      if (v.kind() == JetVar::Kind::Field) {
        if (fv || e != 1)
          throw std::invalid_argument("polynomial is not affine in the field symbols");
        fv = v;
      } else {
        rest.emplace_back(v, e);
      }
    }
    if (fv)
      out.coeff[*fv].add_term(rest, c);
    else
      out.rest.add_term(rest, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {
using P = JetPolynomial;
P u(int i, int m = 0, int n = 0) { return P::u(i, m, n); }
} // namespace

JetPolynomial build_F1() {
  return P(3) * u(1, 0, 2) - P(2) * u(2, 1, 1) + u(3, 2, 0) + P(3) * u(4) * u(1, 1, 0) -
         P(3) * u(3) * u(1, 0, 1) + P(2) * u(2) * u(2, 0, 1) - u(2) * u(3, 1, 0) -
         P(3) * u(1) * u(3, 0, 1) + P(6) * u(1) * u(4, 1, 0);
}

JetPolynomial build_F2() {
  return u(2, 0, 2) - P(2) * u(3, 1, 1) + P(3) * u(4, 2, 0) - P(3) * u(1) * u(4, 0, 1) +
         P(3) * u(2) * u(4, 1, 0) - P(2) * u(3) * u(3, 1, 0) + u(3) * u(2, 0, 1) +
         P(3) * u(4) * u(2, 1, 0) - P(6) * u(4) * u(1, 0, 1);
}

std::pair<JetPolynomial, JetPolynomial> build_F1F2() { return {build_F1(), build_F2()}; }

JetPolynomial build_F3() {
  P F1 = build_F1(), F2 = build_F2();
  P d1F1 = total_derivative(F1, 1), d2F1 = total_derivative(F1, 2);
  P d1F2 = total_derivative(F2, 1), d2F2 = total_derivative(F2, 2);
  P F1sq = F1 * F1, F2sq = F2 * F2;
  return F2 * (F1 * d1F2 - F2 * d1F1) - F1 * (F1 * d2F2 - F2 * d2F1) + F1sq * F1 * u(4) -
         F1sq * F2 * u(3) + F1 * F2sq * u(2) - F2sq * F2 * u(1);
}

std::pair<JetPolynomial, JetPolynomial> build_Psi() {
  P F1 = build_F1(), F2 = build_F2();
  P d1F1 = total_derivative(F1, 1), d2F1 = total_derivative(F1, 2);
  P d1F2 = total_derivative(F2, 1), d2F2 = total_derivative(F2, 2);
  P F1sq = F1 * F1, F2sq = F2 * F2, F12 = F1 * F2;
  P psi1 = -(F1sq * u(3)) + P(2) * F12 * u(2) - P(3) * F2sq * u(1) - F1 * d2F1 +
           P(4) * F1 * d1F2 - P(3) * d1F1 * F2;
  P psi2 = -(P(3) * F1sq * u(4)) + P(2) * F12 * u(3) - F2sq * u(2) + P(3) * F1 * d2F2 -
           P(4) * d2F1 * F2 + F2 * d1F2;
  return {psi1, psi2};
}

const InvariantPolys &invariant_polys() {
  static const InvariantPolys polys = [] {
    InvariantPolys p;
    p.F1 = build_F1();
    p.F2 = build_F2();
    p.F3 = build_F3();
    auto [a, b] = build_Psi();
    p.Psi1 = std::move(a);
    p.Psi2 = std::move(b);
    return p;
  }();
  return polys;
}

} // namespace odeinv
