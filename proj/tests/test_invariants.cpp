#include "doctest.h"
#include "jet_fixtures.hpp"

#include "odeinv/invariants.hpp"
#include "odeinv/transform.hpp"

namespace doctest {
template <> struct StringMaker<odeinv::TensorComp> {
  static String convert(const odeinv::TensorComp &t) { return odeinv::to_string(t).c_str(); }
};
} // namespace doctest

using namespace odeinv;
using odeinv::testing::Rng;
using odeinv::testing::worked_jet;

namespace {

const CoeffExpr Z0(0);

RSectionJet y_squared(int k) {
  return section_jet(parse_expr("y^2"), Z0, Z0, Z0, Rational(0), Rational(0), k);
}

// Jet with F1 = 0 and F2 != 0, obtained by solving for u^1_(0,2).
RSectionJet f1_free(Rng &rng, int k) {
  for (;;) {
    RSectionJet s = rng.section(k);
    const auto &p = invariant_polys();
    s.u(1, 0, 2) = 0;
    s.u(1, 0, 2) = -eval(p.F1, s.truncated(2)) / 3;
    if (eval(p.F2, s.truncated(2)) != 0)
      return s;
  }
}

RSectionJet generic(Rng &rng, int k) {
  for (;;) {
    RSectionJet s = rng.section(k);
    if (eval(invariant_polys().F3, s.truncated(3)) != 0)
      return s;
  }
}

} // namespace

TEST_CASE("F values") {
  FValues z = f_invariants(RSectionJet(Rational(0), Rational(0), 3));
  CHECK(z.F1 == 0);
  CHECK(z.F2 == 0);
  CHECK(*z.F3 == 0);
  FValues y = f_invariants(y_squared(3));
  CHECK(y.F1 == 6);
  CHECK(y.F2 == 0);
  CHECK(*y.F3 == 0);
  FValues w = f_invariants(worked_jet());
  CHECK(w.F1 == 6);
  CHECK(w.F2 == 0);
  CHECK(*w.F3 == 648);
  CHECK_FALSE(f_invariants(y_squared(2)).F3.has_value());
  CHECK_THROWS(f_invariants(y_squared(1)));
}

TEST_CASE("omega2 closed form and construction") {
  CHECK(omega2(RSectionJet(Rational(0), Rational(0), 2)).is_zero());
  TensorComp expect(1, 2, 1);
  expect.set(1, 2, 12);
  expect.set(2, 1, 6);
  CHECK(omega2(y_squared(2)) == expect);

  Omega2Construction zero = omega2_construction(RSectionJet(Rational(0), Rational(0), 2));
  CHECK(zero.omega.is_zero());
  for (const auto &L : zero.H.lift)
    CHECK(L.in_filtration(3) == false);
  for (int r = 0; r < 2; ++r) {
    RFieldJet e(3);
    e.comp(r + 1, 0, 0) = 1;
    CHECK(zero.H.lift[r] == e);
  }

  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    RSectionJet s = rng.section(2);
    Omega2Construction c = omega2_construction(s);
    CHECK(c.omega == omega2(s));
    // the unique symmetric lift with vanishing first order (re-indexed formulas)
    auto h = [&](int i, int a, int b, int r) { return c.H.lift[r - 1].comp(i, a, b); };
    auto u = [&](int i, int a, int b) { return s.u(i, a, b); };
    CHECK(h(1, 2, 0, 1) == 2 * u(1, 0, 1) - u(2, 1, 0));
    CHECK(h(1, 2, 0, 2) == (u(2, 0, 1) - 2 * u(3, 1, 0)) / 3);
    CHECK(h(1, 1, 1, 2) == -u(4, 1, 0));
    CHECK(h(1, 0, 2, 2) == -u(4, 0, 1));
    CHECK(h(2, 2, 0, 1) == u(1, 1, 0));
    CHECK(h(2, 2, 0, 2) == u(1, 0, 1));
    CHECK(h(2, 1, 1, 2) == (2 * u(2, 0, 1) - u(3, 1, 0)) / 3);
    CHECK(h(2, 0, 2, 2) == -2 * u(4, 1, 0) + u(3, 0, 1));
    CHECK(h(1, 1, 0, 1) == 0);
    CHECK(h(2, 0, 1, 2) == 0);
  }
}

TEST_CASE("derived invariants of order two") {
  Derived2 z = derived2(RSectionJet(Rational(0), Rational(0), 2));
  CHECK(z.alpha.is_zero());
  CHECK(z.beta.is_zero());
  Derived2 y = derived2(y_squared(2));
  TensorComp a(0, 1, 1), b(1, 0, 2);
  a.set(0, 1, 6);
  b.set(2, 0, -6);
  CHECK(y.alpha == a);
  CHECK(y.beta == b);
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    RSectionJet s = rng.section(2);
    Derived2 d = derived2(s);
    CHECK(area_contraction(d.beta) == Rational(1, 2) * d.alpha);
    // with raw jet components the trace of omega2 is 3 alpha
    CHECK(trace_contraction(omega2(s)) == Rational(3) * d.alpha);
  }
}

TEST_CASE("omega3 closed form") {
  TensorComp w = omega3(worked_jet());
  CHECK(w == Rational(-324) * [] {
    TensorComp e = g2_generator(2), out(1, 2, 3);
    for (const auto &[k, v] : e.entries())
      out.set(k.first, k.second, v);
    return out;
  }());
  CHECK(omega3(y_squared(3)).is_zero());
  CHECK_THROWS_AS(omega3(RSectionJet(Rational(0), Rational(0), 3)), DegenerateJetError);
}

TEST_CASE("omega3 construction matches the closed form") {
  Omega3Construction w = omega3_construction(worked_jet(), 0, 0);
  CHECK(w.omega == omega3(worked_jet()));
  CHECK(w.t_symmetric);

  Rng rng(3);
  const std::array<std::pair<Rational, Rational>, 3> params{
      {{0, 0}, {Rational(1, 2), -3}, {-2, Rational(5, 7)}}};
  for (int t = 0; t < 50; ++t) {
    RSectionJet s = rng.section(3);
    TensorComp closed = omega3(s);
    for (const auto &[p1, p2] : params) {
      Omega3Construction c = omega3_construction(s, p1, p2);
      CHECK(c.omega == closed);
      CHECK(c.t_symmetric);
    }
  }
  // mirrored chart
  for (int t = 0; t < 10; ++t) {
    RSectionJet s = f1_free(rng, 3);
    CHECK(omega3_construction(s, 1, 2).omega == omega3(s));
  }
  // lambda cancels
  RSectionJet s = rng.section(3);
  CHECK(omega3_construction(s, 1, 1, {2, 1}, {Rational(-1, 3), 4}).omega == omega3(s));
  CHECK_THROWS_AS(omega3_construction(RSectionJet(Rational(0), Rational(0), 3), 0, 0),
                  DegenerateJetError);
}

TEST_CASE("derived invariants of order three") {
  Derived3 w = derived3(worked_jet());
  TensorComp nu(0, 0, 5);
  nu.set(0, 0, 648);
  CHECK(w.nu == nu);
  Derived3 z = derived3(RSectionJet(Rational(0), Rational(0), 3));
  CHECK(z.alpha.is_zero());
  CHECK(z.beta.is_zero());
  CHECK(z.nu.is_zero());
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    RSectionJet s = rng.section(3);
    Derived3 d = derived3(s);
    CHECK(d.nu == Rational(1, 3) * pair_contraction(derived2(s).beta, d.alpha));
    CHECK(trace_contraction(omega3(s)) == Rational(3) * d.alpha);
    CHECK(area_contraction(d.beta) == Rational(1, 2) * d.alpha);
  }
}

TEST_CASE("frame") {
  Frame<Rational> f = frame(worked_jet());
  CHECK(f.xi1[0] == ScaledRational{0, -2});
  CHECK(f.xi1[1] == ScaledRational{-6, -2});
  CHECK(f.xi2[0] == ScaledRational{-324, -4});
  CHECK(f.xi2[1] == ScaledRational{0, -4});
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    RSectionJet s = generic(rng, 3);
    Frame<Rational> fr = frame(s);
    ScaledRational d = fr.xi1[0] * fr.xi2[1] - fr.xi1[1] * fr.xi2[0];
    CHECK(d.e == -6);
    CHECK(d.r == -3 * *f_invariants(s).F3);
  }
  CHECK_THROWS_AS(frame(y_squared(3)), DegenerateJetError);
}

TEST_CASE("scalar invariants: exponents and degeneracy") {
  Rng rng(6);
  RSectionJet s = generic(rng, 4);
  auto I = scalar_invariants(s);
  for (int k = 0; k < 6; ++k)
    CHECK(I[k].e == invariant_exponents[k]);
  CHECK_THROWS_AS(scalar_invariants(y_squared(4)), DegenerateJetError);
  CHECK_THROWS(scalar_invariants(s.truncated(3)));
}

TEST_CASE("naturality under point maps") {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    RSectionJet s = generic(rng, 4);
    MapExprs m = rng.point_map(3, s.base(1), s.base(2));
    MapJet f = map_jet(m.f1, m.f2, s.base(1), s.base(2), 6);
    Mat2 J = f.jacobian();
    Rational dJ = det(J);
    RSectionJet ts = lift_section_jet(f, s);
    RSectionJet s3 = s.truncated(3), ts3 = ts.truncated(3);

    CHECK(omega2(ts) == push_tensor(omega2(s), J));
    Derived2 d2 = derived2(s), td2 = derived2(ts);
    CHECK(td2.alpha == push_tensor(d2.alpha, J));
    CHECK(td2.beta == push_tensor(d2.beta, J));
    CHECK(omega3(ts3) == push_tensor(omega3(s3), J));
    Derived3 d3 = derived3(s3), td3 = derived3(ts3);
    CHECK(td3.alpha == push_tensor(d3.alpha, J));
    CHECK(td3.beta == push_tensor(d3.beta, J));
    CHECK(td3.nu == push_tensor(d3.nu, J));

    // frame vectors push forward with t~ = t / det J
    Frame<Rational> fr = frame(s3), tfr = frame(ts3);
    for (auto [xi, txi] : {std::pair{fr.xi1, tfr.xi1}, std::pair{fr.xi2, tfr.xi2}}) {
      for (int i = 0; i < 2; ++i) {
        Rational pushed = J[i][0] * xi[0].r + J[i][1] * xi[1].r;
        CHECK(txi[i].r == pushed * power(dJ, xi[i].e));
      }
    }

    auto I = scalar_invariants(s), tI = scalar_invariants(ts);
    for (int k = 0; k < 6; ++k) {
      CHECK(tI[k].e == I[k].e);
      CHECK(tI[k].r == I[k].r * power(dJ, I[k].e));
    }
  }
}

TEST_CASE("I4 and I6 are tied to the eigenstructure of Delta") {
  // Delta lies in the first-order part of the isotropy algebra, where xi1 is an eigenvector
  Rng rng(8);
  for (int t = 0; t < 5; ++t) {
    auto I = scalar_invariants(generic(rng, 4));
    CHECK(I[3].r == 0);
    CHECK(I[5].r == -I[2].r / 2);
  }
  RSectionJet s = generic(rng, 4);
  Matrix<Rational> g = invariant_gradients(s);
  CHECK(g.size() == 6);
  CHECK(g[0].size() == 60);
  CHECK(matrix_rank(g, g[0].size()) == 4);
  Matrix<Rational> sub{g[0], g[1], g[2], g[4]};
  CHECK(matrix_rank(sub, g[0].size()) == 4);
}

TEST_CASE("Lie derivatives") {
  // a^i = c_i / y is invariant under x-translations and dilations
  Equation eq;
  std::array<Rational, 4> c{1, -2, 3, Rational(1, 2)};
  for (int i = 0; i < 4; ++i)
    eq.a[i] = CoeffExpr(c[i]) / CoeffExpr::y();
  REQUIRE(*f_invariants(section_jet(eq, Rational(0), Rational(1), 3)).F3 != 0);
  auto L = lie_derivatives(eq, Rational(0), Rational(1));
  auto L2 = lie_derivatives(eq, Rational(3), Rational(2));
  for (int k = 0; k < 6; ++k) {
    CHECK(L.xi[0][k].r == 0);
    CHECK(L.xi[1][k].r == 0);
    // constant invariants: r t^e agrees at both points, t~ = t * (F3 ratio)^(1/5)
    CHECK(L.I[k].e == L2.I[k].e);
  }
  // 5-jet invariance of xi_j(I^k)
  Rng rng(9);
  for (int t = 0; t < 2; ++t) {
    RSectionJet s = generic(rng, 5);
    MapExprs m = rng.point_map(3, s.base(1), s.base(2));
    MapJet f = map_jet(m.f1, m.f2, s.base(1), s.base(2), 7);
    Rational dJ = det(f.jacobian());
    auto A = lie_derivatives(s), B = lie_derivatives(lift_section_jet(f, s));
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 6; ++k)
        CHECK(B.xi[j][k].r == A.xi[j][k].r * power(dJ, A.xi[j][k].e));
  }
}
