#include "doctest.h"
#include "jet_fixtures.hpp"

#include "odeinv/isotropy.hpp"

using namespace odeinv;
using odeinv::testing::Rng;

namespace {

Rational F(const RSectionJet &s, int which) {
  const auto &p = invariant_polys();
  return eval(which == 1 ? p.F1 : which == 2 ? p.F2 : p.F3, s);
}

Vector<Rational> random_member(Rng &rng, const LinearSubspace &s) {
  Vector<Rational> v(s.ambient_dim());
  for (const auto &b : s.basis()) {
    Rational c = rng.rational();
    for (std::size_t t = 0; t < v.size(); ++t)
      v[t] += c * b[t];
  }
  return v;
}

} // namespace

TEST_CASE("unknown ordering") {
  auto u = field_unknowns(0, 2);
  REQUIRE(u.size() == 12);
  CHECK(u[0] == XUnknown{1, 0, 0});
  CHECK(u[1] == XUnknown{1, 1, 0});
  CHECK(u[2] == XUnknown{1, 0, 1});
  CHECK(u[3] == XUnknown{1, 2, 0});
  CHECK(u[6] == XUnknown{2, 0, 0});
  for (int k = 0; k <= 3; ++k)
    CHECK(field_unknowns(0, k + 2).size() == static_cast<std::size_t>((k + 3) * (k + 4)));
}

TEST_CASE("isotropy dimensions") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    RSectionJet s = rng.section(3);
    CHECK(isotropy_algebra(s, 0).dim() == 6);
    CHECK(isotropy_algebra(s, 1).dim() == 6);
    CHECK(isotropy_algebra(s, 2).dim() == 4);
    CHECK(isotropy_algebra(s, 3).dim() == 0);
    RSectionJet lin = odeinv::testing::linearizable(s);
    CHECK(F(lin.truncated(2), 1) == 0);
    CHECK(isotropy_algebra(lin, 2).dim() == 6);
    CHECK(isotropy_algebra(lin, 3).dim() > 0);
  }
  RSectionJet w = odeinv::testing::worked_jet();
  CHECK(isotropy_algebra(w, 3).dim() == 0);
  CoeffExpr z(0);
  RSectionJet y2 = section_jet(parse_expr("y^2"), z, z, z, Rational(0), Rational(0), 3);
  CHECK(isotropy_algebra(y2, 2).dim() == 4);
  CHECK(isotropy_algebra(y2, 3).dim() > 0);
}

TEST_CASE("g_theta1 projects isomorphically onto g_theta0") {
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    RSectionJet s = rng.section(1);
    LinearSubspace g1 = isotropy_algebra(s, 1), g0 = isotropy_algebra(s, 0);
    LinearSubspace proj = project_to_order(g1, 2);
    CHECK(proj.dim() == g1.dim());
    CHECK(proj == g0);
  }
}

TEST_CASE("a_space dimensions, horizontality and bracket closure") {
  Rng rng(17);
  for (int t = 0; t < 6; ++t) {
    RSectionJet s = rng.section(4);
    for (int k = 0; k <= 3; ++k) {
      LinearSubspace A = a_space(s, k);
      CHECK(A.dim() == 2 + isotropy_algebra(s, k).dim());
      CHECK(project_to_order(A, 0).dim() == 2);
    }
    CHECK(a_space(s, 3).dim() == 2);

    LinearSubspace A3 = a_space(s.truncated(3), 2), A2 = a_space(s.truncated(2), 1);
    for (int r = 0; r < 3; ++r) {
      auto X = to_field_jet(random_member(rng, A3), A3.ambient(), 4);
      auto Y = to_field_jet(random_member(rng, A3), A3.ambient(), 4);
      CHECK(A2.contains(from_field_jet(bracket(X, Y), A2.ambient())));
    }
  }
}

TEST_CASE("graded pieces g2 and g1") {
  Rng rng(2);
  RSectionJet s0 = rng.section(0);
  LinearSubspace g2 = graded_piece(isotropy_algebra(s0, 0), 2);
  CHECK(g2.dim() == 2);
  // X^2_11 = 0, X^1_11 - 2 X^2_12 = 0, 2 X^1_12 - X^2_22 = 0, X^1_22 = 0
  auto col = [&](int i, int a, int b) { return *g2.column({i, a, b}); };
  for (const auto &v : g2.basis()) {
    CHECK(v[col(2, 2, 0)] == 0);
    CHECK(v[col(1, 2, 0)] - 2 * v[col(2, 1, 1)] == 0);
    CHECK(2 * v[col(1, 1, 1)] - v[col(2, 0, 2)] == 0);
    CHECK(v[col(1, 0, 2)] == 0);
  }
  Vector<Rational> e1(6), e2(6);
  e1[col(1, 2, 0)] = 2;
  e1[col(2, 1, 1)] = 1;
  e2[col(2, 0, 2)] = 2;
  e2[col(1, 1, 1)] = 1;
  CHECK(LinearSubspace(g2.ambient(), {e1, e2}) == g2);
  // g2 does not depend on the point
  CHECK(graded_piece(isotropy_algebra(rng.section(0), 0), 2) == g2);

  for (int t = 0; t < 5; ++t) {
    RSectionJet s = rng.section(2);
    Rational F1 = F(s, 1), F2 = F(s, 2);
    LinearSubspace g1 = graded_piece(isotropy_algebra(s, 2), 1);
    CHECK(g1.dim() == 2);
    auto c = [&](int i, int a, int b) { return *g1.column({i, a, b}); };
    for (const auto &v : g1.basis()) {
      CHECK(2 * F1 * v[c(1, 1, 0)] + F2 * v[c(2, 1, 0)] + F1 * v[c(2, 0, 1)] == 0);
      CHECK(F2 * v[c(1, 1, 0)] + F1 * v[c(1, 0, 1)] + 2 * F2 * v[c(2, 0, 1)] == 0);
    }
    CHECK(graded_piece(isotropy_algebra(s, 2), 2) == g2);
    CHECK(graded_piece(isotropy_algebra(s, 2), 3).dim() == 0);
  }
}

TEST_CASE("prolongations") {
  Rng rng(9);
  LinearSubspace g2 = graded_piece(isotropy_algebra(rng.section(0), 0), 2);
  CHECK(prolong_subspace(g2).dim() == 0);
  for (int t = 0; t < 5; ++t) {
    RSectionJet s = rng.section(2);
    CHECK(prolong_subspace(graded_piece(isotropy_algebra(s, 2), 1)).dim() == 2);
  }
  CHECK(prolong_subspace(symbol_space(1)) == symbol_space(2));
  CHECK(prolong_subspace(symbol_space(1)).dim() == 6);
}

TEST_CASE("Spencer complexes") {
  Rng rng(21);
  // d o d = 0 on random forms
  for (int k = 2; k <= 4; ++k) {
    SymbolForm xi{k, 0, {Vector<Rational>(static_cast<std::size_t>(2 * (k + 1)))}};
    for (auto &x : xi.comps[0])
      x = rng.rational();
    SymbolForm dd = spencer_operator(spencer_operator(xi));
    for (const auto &x : dd.comps[0])
      CHECK(x == 0);
  }
  // 0 -> S2 -> S1 (x) T* -> S0 (x) L2 -> 0
  Matrix<Rational> d20 = spencer_matrix(2, 0, form_basis(symbol_space(2), 0));
  Matrix<Rational> d11 = spencer_matrix(1, 1, form_basis(symbol_space(1), 1));
  std::size_t r20 = matrix_rank(d20, 6), r11 = matrix_rank(d11, 8);
  CHECK(r20 == 6);
  CHECK(8 - r11 == r20);
  CHECK(r11 == 2);

  // 0 = (g2)^(1) -> g2 (x) T* -> S1 (x) L2 -> 0
  LinearSubspace g2 = graded_piece(isotropy_algebra(rng.section(0), 0), 2);
  auto dom = form_basis(g2, 1);
  CHECK(dom.size() == 4);
  Matrix<Rational> d21 = spencer_matrix(2, 1, dom);
  CHECK(matrix_rank(d21, dom.size()) == 4);
  CHECK(d21.size() == 4);
}

TEST_CASE("orbit classification") {
  CoeffExpr z(0);
  CHECK(classify_orbit(RSectionJet(Rational(0), Rational(0), 2)).kind == OrbitKind::Orb2_2);
  RSectionJet y2 = section_jet(parse_expr("y^2"), z, z, z, Rational(0), Rational(0), 3);
  CHECK(classify_orbit(y2.truncated(2)).kind == OrbitKind::Orb2_0);
  OrbitLabel l = classify_orbit(y2);
  CHECK(l.kind == OrbitKind::Orb3_degenerate);
  CHECK(l.reason == "F3_zero_F_nonzero");
  CHECK(classify_orbit(odeinv::testing::worked_jet()).kind == OrbitKind::Orb3_0);
  OrbitLabel z3 = classify_orbit(RSectionJet(Rational(0), Rational(0), 3));
  CHECK(z3.reason == "preimage_of_Orb2_2");
  CHECK_THROWS(classify_orbit(RSectionJet(Rational(0), Rational(0), 1)));
}
