#pragma once

#include "odeinv/scalar.hpp"
#include "odeinv/taylor_jet.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace odeinv {

// k-jet of the section (a0,a1,a2,a3) at a base point. Coordinate u^i with
// i = 1..4 corresponds to a^{i-1}; entries are raw partials by multi-degree.
template <class T> class SectionJet {
public:
  SectionJet() = default;
  SectionJet(T x1, T x2, int order) : x_{std::move(x1), std::move(x2)}, order_(order) {
    if (order < 0)
      throw std::invalid_argument("negative section jet order");
    for (auto &c : u_)
      c.assign(tri_size(order), T(Rational(0)));
  }

  int order() const { return order_; }
  const T &base(int j) const { return x_[j - 1]; }
  T &base(int j) { return x_[j - 1]; }

  const T &u(int i, int m, int n) const { return u_[i - 1][tri_index(m, n)]; }
  T &u(int i, int m, int n) { return u_[i - 1][tri_index(m, n)]; }

  SectionJet truncated(int k) const {
    if (k > order_)
      throw std::invalid_argument("cannot raise section jet order");
    SectionJet s(x_[0], x_[1], k);
    for (int i = 0; i < 4; ++i)
      for (std::size_t c = 0; c < tri_size(k); ++c)
        s.u_[i][c] = u_[i][c];
    return s;
  }

  friend bool operator==(const SectionJet &a, const SectionJet &b) {
    return a.order_ == b.order_ && a.x_ == b.x_ && a.u_ == b.u_;
  }

private:
  std::array<T, 2> x_{};
  int order_ = 0;
  std::array<std::vector<T>, 4> u_;
};

using RSectionJet = SectionJet<Rational>;

// Section jet from monomial-coefficient jets of a0..a3 (all at one base point).
inline RSectionJet section_jet_from_taylor(const std::array<TaylorJet2, 4> &a, int k) {
  RSectionJet s(a[0].x0(), a[0].y0(), k);
  for (int i = 0; i < 4; ++i) {
    if (a[i].order() < k || a[i].x0() != a[0].x0() || a[i].y0() != a[0].y0())
      throw std::invalid_argument("coefficient jets are incompatible with the requested order");
    for (int d = 0; d <= k; ++d)
      for (int n = 0; n <= d; ++n)
        s.u(i + 1, d - n, n) = a[i].raw_partial(d - n, n);
  }
  return s;
}

inline std::array<TaylorJet2, 4> taylor_from_section(const RSectionJet &s) {
  std::array<TaylorJet2, 4> a;
  for (int i = 0; i < 4; ++i) {
    a[i] = TaylorJet2(s.base(1), s.base(2), s.order());
    for (int d = 0; d <= s.order(); ++d)
      for (int n = 0; n <= d; ++n)
        a[i].coeff(d - n, n) = s.u(i + 1, d - n, n) / (factorial(d - n) * factorial(n));
  }
  return a;
}

// Moves the base point infinitesimally: the result has order k-1 and each
// coordinate carries its two first-order neighbours as eps-parts.
template <class T> SectionJet<Taylor1<T, 2>> shift_lift(const SectionJet<T> &s) {
  using D = Taylor1<T, 2>;
  if (s.order() < 1)
    throw std::invalid_argument("shift_lift needs order >= 1");
  int k = s.order() - 1;
  D x1 = D::variable(s.base(1), 0), x2 = D::variable(s.base(2), 1);
  SectionJet<D> out(x1, x2, k);
  for (int i = 1; i <= 4; ++i)
    for (int d = 0; d <= k; ++d)
      for (int n = 0; n <= d; ++n) {
        int m = d - n;
        D v;
        v.value = s.u(i, m, n);
        v.d[0] = s.u(i, m + 1, n);
        v.d[1] = s.u(i, m, n + 1);
        out.u(i, m, n) = v;
      }
  return out;
}

// Perturbs the coordinate u^i_(m,n) along a single infinitesimal direction.
template <class T>
SectionJet<Taylor1<T, 1>> direction_lift(const SectionJet<T> &s, int i0, int m0, int n0) {
  using D = Taylor1<T, 1>;
  SectionJet<D> out(D(s.base(1), {}), D(s.base(2), {}), s.order());
  for (int i = 1; i <= 4; ++i)
    for (int d = 0; d <= s.order(); ++d)
      for (int n = 0; n <= d; ++n) {
        D v;
        v.value = s.u(i, d - n, n);
        if (i == i0 && d - n == m0 && n == n0)
          v.d[0] = T(Rational(1));
        out.u(i, d - n, n) = v;
      }
  return out;
}

} // namespace odeinv
