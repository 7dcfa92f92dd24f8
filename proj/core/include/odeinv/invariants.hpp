#pragma once

#include "odeinv/isotropy.hpp"
#include "odeinv/jetpoly.hpp"
#include "odeinv/linalg.hpp"
#include "odeinv/scalar.hpp"
#include "odeinv/section_jet.hpp"
#include "odeinv/tensor.hpp"
#include "odeinv/vfjet.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace odeinv {

// The jet lies outside the stratum where a quantity is defined.
struct DegenerateJetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FValues {
  Rational F1, F2;
  std::optional<Rational> F3; // present for jets of order >= 3
};
FValues f_invariants(const RSectionJet &theta);

// r * t^e where t is the real fifth root of F3 at the base jet. Over Taylor
// scalars r also carries the first-order variation of (F3/F3(base))^(e/5).
template <class T> struct Scaled {
  T r{};
  int e = 0;

  friend Scaled operator*(const Scaled &a, const Scaled &b) { return {a.r * b.r, a.e + b.e}; }
  friend Scaled operator+(const Scaled &a, const Scaled &b) {
    if (a.e != b.e)
      throw std::invalid_argument("adding scaled values with different exponents");
    return {a.r + b.r, a.e};
  }
  friend Scaled operator-(const Scaled &a, const Scaled &b) {
    if (a.e != b.e)
      throw std::invalid_argument("subtracting scaled values with different exponents");
    return {a.r - b.r, a.e};
  }
  friend bool operator==(const Scaled &a, const Scaled &b) = default;
};
using ScaledRational = Scaled<Rational>;

std::string to_string(const ScaledRational &v);
// Real value of r * F3^(e/5).
double approximate(const ScaledRational &v, const Rational &F3);

template <class T> struct Frame {
  std::array<Scaled<T>, 2> xi1, xi2;
};

// Horizontal subspace given by the lifts of e1 and e2; h^i_{sigma,r} is
// lift[r-1].comp(i, sigma).
struct HorizontalSubspace {
  int order = 0;
  std::array<RFieldJet, 2> lift;
};

TensorComp omega2(const RSectionJet &theta);
struct Omega2Construction {
  HorizontalSubspace H;
  TensorComp omega;
};
Omega2Construction omega2_construction(const RSectionJet &theta);

struct Derived2 {
  TensorComp alpha, beta;
};
Derived2 derived2(const RSectionJet &theta);

// Throws DegenerateJetError when F1 = F2 = 0.
TensorComp omega3(const RSectionJet &theta);
struct Omega3Construction {
  HorizontalSubspace H;
  // t^i_{j m k}, indexed [i-1][j-1][m-1][k-1]
  std::array<std::array<std::array<std::array<Rational, 2>, 2>, 2>, 2> t{};
  bool t_symmetric = false;
  TensorComp omega;
};
// Free parameters fix h^1_{1,1}, h^2_{1,1} (or h^2_{2,2}, h^1_{2,2} when F1 = 0).
// X, Y span the plane used for the bracket; the result is divided by lambda^3.
Omega3Construction omega3_construction(const RSectionJet &theta, const Rational &h11_1,
                                       const Rational &h11_2,
                                       const std::array<Rational, 2> &X = {1, 0},
                                       const std::array<Rational, 2> &Y = {0, 1});

struct Derived3 {
  TensorComp alpha, beta, nu;
};
Derived3 derived3(const RSectionJet &theta);

// Throws DegenerateJetError when F3 = 0.
template <class T> Frame<T> frame(const SectionJet<T> &theta);

// t-exponents of I^1..I^6.
inline constexpr std::array<int, 6> invariant_exponents{-4, -2, -6, -4, -8, -6};

template <class T> std::array<Scaled<T>, 6> scalar_invariants(const SectionJet<T> &theta);

template <class T> struct LieDerivatives {
  std::array<Scaled<T>, 6> I;
  // xi[j][k] = xi_{j+1}(I^{k+1})
  std::array<std::array<Scaled<T>, 6>, 2> xi;
};
// Needs a 5-jet; evaluates the order-4 pipeline over first-order shifts.
template <class T> LieDerivatives<T> lie_derivatives(const SectionJet<T> &theta5);
LieDerivatives<Rational> lie_derivatives(const Equation &eq, const Rational &x0,
                                         const Rational &y0);

// Gradients of the r-parts with respect to the jet coordinates u^i_sigma,
// |sigma| <= order of theta; one row per invariant.
Matrix<Rational> invariant_gradients(const RSectionJet &theta4);
// Rows for I^k, xi_1(I^k), xi_2(I^5), xi_2(I^6) over the coordinates of a 5-jet.
Matrix<Rational> extended_invariant_gradients(const RSectionJet &theta5);

// ---------------------------------------------------------------------------
// template definitions

namespace detail {

inline Rational unit_power(const Rational &x, const Rational &q) {
  (void)q;
  if (x != 1)
    throw std::logic_error("unit_power expects base value 1");
  return Rational(1);
}

// x^q for x with base value 1; exact because the eps parts are nilpotent.
template <class T, std::size_t N>
Taylor1<T, N> unit_power(const Taylor1<T, N> &x, const Rational &q) {
  Taylor1<T, N> r;
  r.value = unit_power(x.value, q);
  T dv = T(scalar_from<T>(q) * unit_power(x.value, q - 1));
  for (std::size_t k = 0; k < N; ++k)
    r.d[k] = dv * x.d[k];
  return r;
}

template <class T> struct Regular {
  T F1, F2, F3, Psi1, Psi2;
  T u2, u4; // (F3/F3_0)^(-2/5), (F3/F3_0)^(-4/5)
};

template <class T> Regular<T> regular_data(const SectionJet<T> &theta) {
  if (theta.order() < 3)
    throw std::invalid_argument("the frame needs a jet of order >= 3");
  const auto &p = invariant_polys();
  Regular<T> g;
  g.F1 = eval(p.F1, theta);
  g.F2 = eval(p.F2, theta);
  g.F3 = eval(p.F3, theta);
  g.Psi1 = eval(p.Psi1, theta);
  g.Psi2 = eval(p.Psi2, theta);
  const Rational &f0 = base_value(g.F3);
  if (f0 == 0)
    throw DegenerateJetError("F3 vanishes: the jet is not in the generic orbit");
  T ratio = g.F3 / scalar_from<T>(f0);
  g.u2 = unit_power(ratio, Rational(-2, 5));
  g.u4 = unit_power(ratio, Rational(-4, 5));
  return g;
}

// Solves a v1 + b v2 = w for 2-vectors over T.
template <class T>
std::array<T, 2> solve2(const std::array<T, 2> &v1, const std::array<T, 2> &v2,
                        const std::array<T, 2> &w) {
  T d = v1[0] * v2[1] - v1[1] * v2[0];
  if (!is_unit(d))
    throw DegenerateJetError("frame vectors are dependent");
  return {T(w[0] * v2[1] - w[1] * v2[0]) / d, T(v1[0] * w[1] - v1[1] * w[0]) / d};
}

} // namespace detail

template <class T> Frame<T> frame(const SectionJet<T> &theta) {
  auto g = detail::regular_data(theta);
  Frame<T> f;
  f.xi1 = {Scaled<T>{g.F2 * g.u2, -2}, Scaled<T>{-(g.F1 * g.u2), -2}};
  f.xi2 = {Scaled<T>{g.Psi2 * g.u4, -4}, Scaled<T>{-(g.Psi1 * g.u4), -4}};
  return f;
}

template <class T> std::array<Scaled<T>, 6> scalar_invariants(const SectionJet<T> &theta) {
  if (theta.order() < 4)
    throw std::invalid_argument("scalar invariants need a jet of order >= 4");
  SectionJet<T> th = theta.truncated(4);
  Frame<T> fr = frame(th);
  std::array<T, 2> x1{fr.xi1[0].r, fr.xi1[1].r}, x2{fr.xi2[0].r, fr.xi2[1].r};

  auto cols = field_unknowns(0, 5);
  Matrix<T> basis = a_space_basis(th, 3);
  if (basis.size() != 2)
    throw DegenerateJetError("the A-space of the 4-jet has dimension " +
                             std::to_string(basis.size()) + ", expected 2");
  std::size_t c1 = 0, c2 = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] == XUnknown{1, 0, 0})
      c1 = c;
    if (cols[c] == XUnknown{2, 0, 0})
      c2 = c;
  }
  auto lift = [&](const std::array<T, 2> &v) {
    auto k = detail::solve2<T>({basis[0][c1], basis[0][c2]}, {basis[1][c1], basis[1][c2]}, v);
    Vector<T> w(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      w[c] = k[0] * basis[0][c] + k[1] * basis[1][c];
    return to_field_jet(w, cols, 5);
  };

  // omega(xi1, xi2): exponent -6
  VFieldJet<T> W = bracket(lift(x1), lift(x2));
  std::array<T, 2> Z{W.comp(1, 0, 0), W.comp(2, 0, 0)};
  auto I12 = detail::solve2(x1, x2, Z);
  VFieldJet<T> D = W - lift(Z).truncated(4);
  // Delta^i_j, the order-one part
  auto apply = [&](const std::array<T, 2> &v) {
    std::array<T, 2> out;
    for (int i = 1; i <= 2; ++i)
      out[i - 1] = D.comp(i, 1, 0) * v[0] + D.comp(i, 0, 1) * v[1];
    return out;
  };
  auto I34 = detail::solve2(x1, x2, apply(x1));
  auto I56 = detail::solve2(x1, x2, apply(x2));
  const auto &e = invariant_exponents;
  return {Scaled<T>{I12[0], e[0]}, Scaled<T>{I12[1], e[1]}, Scaled<T>{I34[0], e[2]},
          Scaled<T>{I34[1], e[3]}, Scaled<T>{I56[0], e[4]}, Scaled<T>{I56[1], e[5]}};
}

template <class T> LieDerivatives<T> lie_derivatives(const SectionJet<T> &theta5) {
  if (theta5.order() < 5)
    throw std::invalid_argument("Lie derivatives need a jet of order >= 5");
  using D = Taylor1<T, 2>;
  SectionJet<D> shifted = shift_lift(theta5.truncated(5));
  auto I = scalar_invariants(shifted);
  Frame<T> fr = frame(theta5.truncated(3));
  LieDerivatives<T> out;
  for (int k = 0; k < 6; ++k) {
    out.I[k] = Scaled<T>{I[k].r.value, I[k].e};
    const auto &g = I[k].r.d;
    out.xi[0][k] = Scaled<T>{fr.xi1[0].r * g[0] + fr.xi1[1].r * g[1], I[k].e + fr.xi1[0].e};
    out.xi[1][k] = Scaled<T>{fr.xi2[0].r * g[0] + fr.xi2[1].r * g[1], I[k].e + fr.xi2[0].e};
  }
  return out;
}

} // namespace odeinv
