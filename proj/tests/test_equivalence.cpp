#include "doctest.h"
#include "random_inputs.hpp"

#include "odeinv/equivalence.hpp"
#include "odeinv/transform.hpp"

using namespace odeinv;
using odeinv::testing::Rng;

namespace {

const CoeffExpr X = CoeffExpr::x(), Y = CoeffExpr::y();

// a^i = c_i / y: invariant under x-translations and dilations, so all I^k are constant.
Equation homogeneous(const std::array<Rational, 4> &c) {
  Equation eq;
  for (int i = 0; i < 4; ++i)
    eq.a[i] = CoeffExpr(c[i]) / Y;
  return eq;
}

// Coefficients depending on y only: invariant under x-translations.
Equation x_translation_invariant() {
  Equation eq;
  eq.a[0] = parse_expr("y^3 + 2*y");
  eq.a[1] = parse_expr("1 - y");
  eq.a[2] = parse_expr("y^2");
  eq.a[3] = parse_expr("2 + y");
  return eq;
}

Equation generic_equation(Rng &rng, const Point &p) {
  for (;;) {
    Equation eq = rng.equation(3);
    if (*f_invariants(section_jet(eq, p.first, p.second, 3)).F3 != 0)
      return eq;
  }
}

Point image(const MapExprs &m, const Point &p) {
  return {evaluate(m.f1, p.first, p.second), evaluate(m.f2, p.first, p.second)};
}

const GridSpec small = parse_grid("0,0:1/4,1/4:2,2");

} // namespace

TEST_CASE("grid spec") {
  GridSpec g = parse_grid("-1,0:1,1/2:3,2");
  CHECK(g.x0 == -1);
  CHECK(g.y1 == Rational(1, 2));
  auto pts = g.points({Rational(1), Rational(1)});
  REQUIRE(pts.size() == 6);
  CHECK(pts[0] == Point{0, 1});
  CHECK(pts[1] == Point{0, Rational(3, 2)});
  CHECK(pts[5] == Point{2, Rational(3, 2)});
  CHECK(to_string(g) == "-1,0:1,1/2:3,2");
  CHECK(parse_grid("0,0:0,0:1,1").points({1, 2}) == std::vector<Point>{{1, 2}});
  CHECK_THROWS(parse_grid("0,0:1,1"));
  CHECK_THROWS(parse_grid("0,0:1,1:0,2"));
  CHECK_THROWS(parse_grid("0,0:1,1:1/2,2"));
  CHECK_THROWS(parse_grid("0,a:1,1:2,2"));
}

TEST_CASE("exact comparison of scaled values") {
  // 2 t^-2 with t^5 = 32 equals 1/2; so does 8 t^-2 with t^5 = 1024
  InvariantValue a{{2, -2}, 32}, b{{8, -2}, 1024}, c{{1, -2}, 32};
  CHECK(same_value(a, b));
  CHECK_FALSE(same_value(a, c));
  CHECK(a.approx() == doctest::Approx(0.5));
}

TEST_CASE("regular case classification") {
  Equation hom = homogeneous({1, -2, 3, Rational(1, 2)});
  Point p{0, 1};
  CHECK(classify_regular_case(hom, p, small) == RegularCase::ConstantInvariants);

  Equation trans = x_translation_invariant();
  InvariantSignature s = signature(trans, p, small);
  CHECK(s.kind == RegularCase::OneGenerator);
  REQUIRE(s.generators.size() == 1);
  CHECK(s.generators[0] < 6);

  Rng rng(11);
  Point q{Rational(1, 3), Rational(-1, 2)};
  Equation gen = generic_equation(rng, q);
  InvariantSignature g = signature(gen, q, small);
  CHECK(g.kind == RegularCase::TwoIndependent);
  CHECK(g.generators.size() == 2);

  Equation y2;
  y2.a[0] = parse_expr("y^2");
  CHECK_THROWS_AS(signature(y2, {0, 0}, small), NonRegularPointError);
}

TEST_CASE("positive fixtures pass and the verdict is symmetric") {
  Rng rng(12);
  for (int t = 0; t < 4; ++t) {
    Point p{rng.rational(2, 2), rng.rational(2, 2)};
    Equation eq = generic_equation(rng, p);
    MapExprs m = rng.invertible_map(2);
    Equation eq2 = transformed_equation(eq, m);
    Point p2 = image(m, p);
    auto r = check_equivalence(eq, p, eq2, p2, small);
    CHECK(r.verdict == Verdict::NecessaryConditionsPass);
    CHECK(r.first.kind == r.second.kind);
    auto back = check_equivalence(eq2, p2, eq, p, small);
    CHECK(back.verdict == r.verdict);
  }
  // constant-invariant equation against a moved copy
  Equation hom = homogeneous({1, -2, 3, Rational(1, 2)});
  MapExprs shift{X + CoeffExpr(2), CoeffExpr(3) * Y, X - CoeffExpr(2), Y / CoeffExpr(3)};
  auto r = check_equivalence(hom, {0, 1}, transformed_equation(hom, shift), {2, 3}, small);
  CHECK(r.verdict == Verdict::NecessaryConditionsPass);
  // one generator: grid points along x share J and are matched exactly
  Equation trans = x_translation_invariant();
  auto r1 = check_equivalence(trans, {0, 1}, trans, {Rational(1, 4), 1}, small);
  CHECK(r1.verdict == Verdict::NecessaryConditionsPass);
  CHECK_FALSE(r1.matches.empty());
}

TEST_CASE("negative fixtures fail") {
  Rng rng(13);
  for (int t = 0; t < 3; ++t) {
    Point p{rng.rational(2, 2), rng.rational(2, 2)};
    Equation eq = generic_equation(rng, p);
    Equation bad = eq;
    bad.a[0] = bad.a[0] + CoeffExpr(rng.nonzero_rational()) * X.pow(3);
    auto r = check_equivalence(eq, p, bad, p, small);
    CHECK(r.verdict == Verdict::Fail);
    CHECK_FALSE(r.reason.empty());
    CHECK(check_equivalence(bad, p, eq, p, small).verdict == Verdict::Fail);
  }
  // different constants
  auto r = check_equivalence(homogeneous({1, -2, 3, Rational(1, 2)}), {0, 1},
                             homogeneous({1, -2, 3, 1}), {0, 1}, small);
  CHECK(r.verdict == Verdict::Fail);
}

TEST_CASE("case mismatch and exit codes") {
  Rng rng(14);
  Point p{0, 1};
  Equation gen = generic_equation(rng, p);
  auto r = check_equivalence(homogeneous({1, -2, 3, Rational(1, 2)}), p, gen, p, small);
  CHECK(r.verdict == Verdict::CaseMismatch);
  CHECK(exit_code(Verdict::NecessaryConditionsPass) == 0);
  CHECK(exit_code(Verdict::Fail) == 1);
  CHECK(exit_code(Verdict::CaseMismatch) == 2);
  CHECK(exit_code(Verdict::Inconclusive) == 2);
}

TEST_CASE("case tags survive point transformations") {
  Rng rng(15);
  Equation trans = x_translation_invariant();
  MapExprs m = rng.invertible_map(2);
  Point p{0, 1};
  Equation moved = transformed_equation(trans, m);
  CHECK(classify_regular_case(moved, image(m, p), small) == RegularCase::OneGenerator);
}
