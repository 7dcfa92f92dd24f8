#pragma once

#include "odeinv/expr.hpp"
#include "odeinv/jetpoly.hpp"
#include "odeinv/scalar.hpp"
#include "odeinv/section_jet.hpp"
#include "odeinv/taylor_jet.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <vector>

namespace odeinv {

// m-jet of a plane vector field; comp(i,a,b) is the raw partial
// d^{a+b} X^i / dx^a dy^b at the base point.
template <class T> class VFieldJet {
public:
  VFieldJet() = default;
  explicit VFieldJet(int order) : order_(order) {
    if (order < 0)
      throw std::invalid_argument("negative field jet order");
    for (auto &c : c_)
      c.assign(tri_size(order), scalar_from<T>(Rational(0)));
  }

  int order() const { return order_; }
  const T &comp(int i, int a, int b) const { return c_[i - 1][tri_index(a, b)]; }
  T &comp(int i, int a, int b) { return c_[i - 1][tri_index(a, b)]; }

  VFieldJet truncated(int m) const {
    if (m > order_)
      throw std::invalid_argument("cannot raise field jet order");
    VFieldJet r(m);
    for (int i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < tri_size(m); ++k)
        r.c_[i][k] = c_[i][k];
    return r;
  }

  // Membership in L^r: every component of total order <= r vanishes.
  bool in_filtration(int r) const {
    for (int i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < tri_size(std::min(r, order_)); ++k)
        if (!is_zero(c_[i][k]))
          return false;
    return true;
  }

  bool is_zero_jet() const { return in_filtration(order_); }

  VFieldJet &operator+=(const VFieldJet &o) {
    check(o);
    for (int i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < c_[i].size(); ++k)
        c_[i][k] += o.c_[i][k];
    return *this;
  }
  VFieldJet &operator-=(const VFieldJet &o) {
    check(o);
    for (int i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < c_[i].size(); ++k)
        c_[i][k] -= o.c_[i][k];
    return *this;
  }
  VFieldJet &operator*=(const T &s) {
    for (auto &v : c_)
      for (auto &x : v)
        x = x * s;
    return *this;
  }
  friend VFieldJet operator+(VFieldJet a, const VFieldJet &b) { return a += b; }
  friend VFieldJet operator-(VFieldJet a, const VFieldJet &b) { return a -= b; }
  friend VFieldJet operator*(const T &s, VFieldJet a) { return a *= s; }
  friend bool operator==(const VFieldJet &a, const VFieldJet &b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }

private:
  void check(const VFieldJet &o) const {
    if (o.order_ != order_)
      throw std::invalid_argument("field jets of different orders");
  }
  int order_ = 0;
  std::array<std::vector<T>, 2> c_;
};

using RFieldJet = VFieldJet<Rational>;

// (m-1)-jet of [X,Y]^i = X^j d_j Y^i - Y^j d_j X^i.
template <class T> VFieldJet<T> bracket(const VFieldJet<T> &X, const VFieldJet<T> &Y) {
  int m = X.order();
  if (Y.order() != m)
    throw std::invalid_argument("bracket of field jets of different orders");
  if (m < 1)
    throw std::invalid_argument("bracket needs jets of order >= 1");
  int k = m - 1;
  std::vector<T> fact(m + 2);
  for (int i = 0; i <= m + 1; ++i)
    fact[i] = scalar_from<T>(factorial(i));
  // monomial coefficients
  auto mono = [&](const VFieldJet<T> &Z) {
    std::array<std::vector<T>, 2> c;
    for (int i = 0; i < 2; ++i) {
      c[i].resize(tri_size(m));
      for (int d = 0; d <= m; ++d)
        for (int b = 0; b <= d; ++b)
          c[i][tri_index(d - b, b)] = Z.comp(i + 1, d - b, b) / (fact[d - b] * fact[b]);
    }
    return c;
  };
  auto cx = mono(X), cy = mono(Y);
  std::array<std::vector<T>, 2> out;
  for (auto &v : out)
    v.assign(tri_size(k), scalar_from<T>(Rational(0)));
  // out^i += A^j * d_j B^i, sign s
  auto accumulate = [&](const std::array<std::vector<T>, 2> &A,
                        const std::array<std::vector<T>, 2> &B, bool negate) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int da = 0; da <= k; ++da)
          for (int ba = 0; ba <= da; ++ba) {
            const T &a = A[j][tri_index(da - ba, ba)];
            if (is_zero(a))
              continue;
            for (int db = 0; db + da <= k; ++db)
              for (int bb = 0; bb <= db; ++bb) {
                int am = db - bb, bm = bb;
                // coefficient of x^am y^bm in d_j B^i
                const T &src = j == 0 ? B[i][tri_index(am + 1, bm)] : B[i][tri_index(am, bm + 1)];
                if (is_zero(src))
                  continue;
                T term = a * src * scalar_from<T>(Rational(j == 0 ? am + 1 : bm + 1));
                T &dst = out[i][tri_index(da - ba + am, ba + bm)];
                if (negate)
                  dst -= term;
                else
                  dst += term;
              }
          }
  };
  accumulate(cx, cy, false);
  accumulate(cy, cx, true);
  VFieldJet<T> r(k);
  for (int i = 0; i < 2; ++i)
    for (int d = 0; d <= k; ++d)
      for (int b = 0; b <= d; ++b)
        r.comp(i + 1, d - b, b) = out[i][tri_index(d - b, b)] * fact[d - b] * fact[b];
  return r;
}

// D_sigma psi^i_X for sigma = (m,n), as polynomials affine in the field
// symbols X^r_(a,b). Ordered by i, then |sigma|, then m descending.
struct PsiEntry {
  int i, m, n;
  JetPolynomial poly;
};

JetPolynomial psi_component(int i);
// All entries with |sigma| <= k (k <= 3); built once and cached.
const std::vector<PsiEntry> &psi_symbolic(int k);

// psi_X(theta_1) from the 2-jet of X.
template <class T>
std::array<T, 4> deformation_velocity(const SectionJet<T> &theta, const VFieldJet<T> &X) {
  if (theta.order() < 1)
    throw std::invalid_argument("deformation velocity needs a 1-jet of the section");
  if (X.order() < 2)
    throw std::invalid_argument("deformation velocity needs a 2-jet of the field");
  std::array<T, 4> out;
  for (int i = 1; i <= 4; ++i) {
    FieldSplit s = split_field_linear(psi_component(i));
    T acc = eval(s.rest, theta);
    for (const auto &[v, c] : s.coeff)
      acc += eval(c, theta) * X.comp(v.index(), v.m(), v.n());
    out[i - 1] = acc;
  }
  return out;
}

// Lift of a polynomial plane vector field to J^k: base components X^1, X^2
// and fiber components X^j u^i_{sigma+e_j} + D_sigma psi^i_X.
struct ProlongedField {
  int order = 0;
  CoeffExpr X1, X2;
  std::map<JetVar, JetPolynomial> psi;        // D_sigma psi^i_X by u^i_sigma
  std::map<JetVar, JetPolynomial> components; // full field on J^k
};

ProlongedField prolong_vector_field(const CoeffExpr &X1, const CoeffExpr &X2, int k);

// Lie bracket of two vector fields on J^k given by components.
std::map<JetVar, JetPolynomial> commutator(const ProlongedField &X, const ProlongedField &Y);

// [X,Y]^i = X^j d_j Y^i - Y^j d_j X^i for plane fields given by expressions.
std::pair<CoeffExpr, CoeffExpr> field_bracket(const CoeffExpr &X1, const CoeffExpr &X2,
                                              const CoeffExpr &Y1, const CoeffExpr &Y2);

// Polynomial expression in x, y as a JetPolynomial in x^1, x^2.
JetPolynomial to_jet_polynomial(const CoeffExpr &e);

// m-jet at (x0,y0) of a field given by expressions.
RFieldJet field_jet(const CoeffExpr &X1, const CoeffExpr &X2, const Rational &x0,
                    const Rational &y0, int m);

} // namespace odeinv
