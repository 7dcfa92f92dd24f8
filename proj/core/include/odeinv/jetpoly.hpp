#pragma once

#include "odeinv/rational.hpp"
#include "odeinv/scalar.hpp"
#include "odeinv/section_jet.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace odeinv {

// Variable of the jet-space polynomial ring: base coordinate x^j, jet
// coordinate u^i_(m,n), or a formal vector-field jet symbol X^i_(a,b).
class JetVar {
public:
  enum class Kind : std::uint8_t { Base = 0, Fiber = 1, Field = 2 };

  static JetVar base(int j) { return JetVar(Kind::Base, j, 0, 0); }
  static JetVar fiber(int i, int m, int n) { return JetVar(Kind::Fiber, i, m, n); }
  static JetVar field(int i, int a, int b) { return JetVar(Kind::Field, i, a, b); }

  Kind kind() const { return static_cast<Kind>(code_ >> 24); }
  int index() const { return static_cast<int>((code_ >> 16) & 0xff); }
  int m() const { return static_cast<int>((code_ >> 8) & 0xff); }
  int n() const { return static_cast<int>(code_ & 0xff); }
  int order() const { return m() + n(); }
  std::uint32_t code() const { return code_; }

  // Multi-degree raised by e_j (fiber and field symbols only).
  JetVar shifted(int j) const {
    return JetVar(kind(), index(), m() + (j == 1), n() + (j == 2));
  }

  std::string name() const;

  auto operator<=>(const JetVar &) const = default;

private:
  JetVar(Kind k, int i, int m, int n)
      : code_((static_cast<std::uint32_t>(k) << 24) | (static_cast<std::uint32_t>(i) << 16) |
              (static_cast<std::uint32_t>(m) << 8) | static_cast<std::uint32_t>(n)) {}
  std::uint32_t code_;
};

// Sorted by variable, exponents positive.
using Monomial = std::vector<std::pair<JetVar, int>>;

class JetPolynomial {
public:
  using TermMap = std::map<Monomial, Rational>;

  JetPolynomial() = default;
  JetPolynomial(const Rational &c);
  JetPolynomial(long c) : JetPolynomial(Rational(c)) {}
  static JetPolynomial variable(JetVar v);
  static JetPolynomial u(int i, int m = 0, int n = 0) { return variable(JetVar::fiber(i, m, n)); }
  static JetPolynomial X(int i, int a = 0, int b = 0) { return variable(JetVar::field(i, a, b)); }
  static JetPolynomial x(int j) { return variable(JetVar::base(j)); }

  const TermMap &terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // Largest fiber order appearing; -1 if no fiber variable.
  int order_bound() const;
  Rational coefficient(const Monomial &m) const;

  void add_term(const Monomial &m, const Rational &c);

  JetPolynomial &operator+=(const JetPolynomial &o);
  JetPolynomial &operator-=(const JetPolynomial &o);
  JetPolynomial operator-() const;
  friend JetPolynomial operator+(JetPolynomial a, const JetPolynomial &b) { return a += b; }
  friend JetPolynomial operator-(JetPolynomial a, const JetPolynomial &b) { return a -= b; }
  friend JetPolynomial operator*(const JetPolynomial &a, const JetPolynomial &b);
  friend bool operator==(const JetPolynomial &a, const JetPolynomial &b) {
    return a.terms_ == b.terms_;
  }

private:
  TermMap terms_;
};

std::string to_string(const JetPolynomial &p);

// D_j: d/dx^j plus the shift u_s -> u_{s+e_j}; formal X symbols shift too.
JetPolynomial total_derivative(const JetPolynomial &p, int j);
JetPolynomial partial_derivative(const JetPolynomial &p, JetVar v);

JetPolynomial substitute(const JetPolynomial &p,
                         const std::function<std::optional<JetPolynomial>(JetVar)> &rule);

// p = rest + sum_v coeff[v] * v for field symbols v; throws if p is not
// affine in the field symbols.
struct FieldSplit {
  std::map<JetVar, JetPolynomial> coeff;
  JetPolynomial rest;
};
FieldSplit split_field_linear(const JetPolynomial &p);

struct OrderMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class T> T eval(const JetPolynomial &p, const SectionJet<T> &s) {
  if (p.order_bound() > s.order())
    throw OrderMismatch("polynomial of order " + std::to_string(p.order_bound()) +
                        " evaluated on a " + std::to_string(s.order()) + "-jet");
  T total = scalar_from<T>(Rational(0));
  for (const auto &[mono, c] : p.terms()) {
    T term = scalar_from<T>(c);
    for (const auto &[v, e] : mono) {
      const T *val = nullptr;
      switch (v.kind()) {
      case JetVar::Kind::Base:
        val = &s.base(v.index());
        break;
      case JetVar::Kind::Fiber:
        val = &s.u(v.index(), v.m(), v.n());
        break;
      case JetVar::Kind::Field:
        throw std::invalid_argument("cannot evaluate formal field symbol " + v.name());
      }
      for (int k = 0; k < e; ++k)
        term = term * *val;
    }
    total += term;
  }
  return total;
}

JetPolynomial build_F1();
JetPolynomial build_F2();
std::pair<JetPolynomial, JetPolynomial> build_F1F2();
JetPolynomial build_F3();
std::pair<JetPolynomial, JetPolynomial> build_Psi();

// Expanded F1, F2, F3, Psi1, Psi2 built once.
struct InvariantPolys {
  JetPolynomial F1, F2, F3, Psi1, Psi2;
};
const InvariantPolys &invariant_polys();

} // namespace odeinv
