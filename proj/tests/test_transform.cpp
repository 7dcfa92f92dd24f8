#include "doctest.h"
#include "jet_fixtures.hpp"

#include "odeinv/isotropy.hpp"
#include "odeinv/transform.hpp"

using namespace odeinv;
using odeinv::testing::Rng;

namespace {

const CoeffExpr X = CoeffExpr::x(), Y = CoeffExpr::y();

std::pair<Rational, Rational> F12(const RSectionJet &s) {
  const auto &p = invariant_polys();
  return {eval(p.F1, s), eval(p.F2, s)};
}

} // namespace

TEST_CASE("map jet inversion") {
  MapJet lin = map_jet(parse_expr("2*x + y"), parse_expr("x - y"), Rational(0), Rational(0), 3);
  MapJet inv = invert_map_jet(lin);
  CHECK(inv.jacobian() == inverse(lin.jacobian()));
  for (int d = 2; d <= 3; ++d)
    for (int b = 0; b <= d; ++b) {
      CHECK(inv.component(1).coeff(d - b, b) == 0);
      CHECK(inv.component(2).coeff(d - b, b) == 0);
    }

  MapJet f = map_jet(parse_expr("x + x^2"), Y, Rational(0), Rational(0), 2);
  MapJet g = invert_map_jet(f);
  CHECK(g.jacobian() == Mat2{{{1, 0}, {0, 1}}});
  CHECK(g.component(1).raw_partial(2, 0) == -2);
  CHECK(g.component(2).raw_partial(2, 0) == 0);

  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    Rational x0 = rng.rational(), y0 = rng.rational();
    MapExprs m = rng.point_map(3, x0, y0);
    MapJet fj = map_jet(m.f1, m.f2, x0, y0, 4);
    MapJet gj = invert_map_jet(fj);
    CHECK(compose(gj, fj) == MapJet::identity(x0, y0, 4));
    auto [q1, q2] = fj.image();
    CHECK(compose(fj, gj) == MapJet::identity(q1, q2, 4));
  }
  CHECK_THROWS_AS(invert_map_jet(map_jet(X + Y, X + Y, Rational(0), Rational(0), 2)),
                  SingularMapError);
  CHECK_THROWS_AS(make_point_map(X * X, Y, Rational(0), Rational(0)), SingularMapError);
}

TEST_CASE("identity map leaves equations unchanged") {
  Rng rng(4);
  Equation eq = rng.equation(3);
  Equation pf = pushforward_equation(eq, X, Y);
  RSectionJet th = section_jet(eq, Rational(1, 2), Rational(-1), 3);
  CHECK(section_jet(pf, Rational(1, 2), Rational(-1), 3) == th);
  CHECK(lift_section_jet(MapJet::identity(Rational(1, 2), Rational(-1), 5), th) == th);
}

TEST_CASE("linear map on the zero jet") {
  RSectionJet zero(Rational(1), Rational(3), 2);
  MapJet f = map_jet(parse_expr("2*x"), Y, Rational(1), Rational(3), 4);
  RSectionJet lifted = lift_section_jet(f, zero);
  CHECK(lifted == RSectionJet(Rational(2), Rational(3), 2));
}

TEST_CASE("swap map") {
  Rng rng(5);
  CoeffExpr a0 = rng.polynomial(3);
  Equation eq{{a0, CoeffExpr(0), CoeffExpr(0), CoeffExpr(0)}};
  Equation t = transformed_equation(eq, MapExprs{Y, X, Y, X});
  for (int s = 0; s < 5; ++s) {
    Rational u = rng.rational(), v = rng.rational();
    CHECK(evaluate(t.a[0], u, v) == 0);
    CHECK(evaluate(t.a[1], u, v) == 0);
    CHECK(evaluate(t.a[2], u, v) == 0);
    CHECK(evaluate(t.a[3], u, v) == -evaluate(a0, v, u));
  }
  // the jet-level path agrees
  RSectionJet th = section_jet(eq, Rational(1), Rational(2), 2);
  CHECK(lift_section_jet(map_jet(Y, X, Rational(1), Rational(2), 4), th) ==
        section_jet(t, Rational(2), Rational(1), 2));
}

TEST_CASE("explicit inverse agrees with the jet path") {
  Rng rng(6);
  CoeffExpr f1 = X + Y * Y, f2 = Y;
  MapExprs m{f1, f2, X - Y * Y, Y};
  for (int t = 0; t < 5; ++t) {
    Equation eq = rng.equation(3);
    Rational x0 = rng.rational(), y0 = rng.rational();
    RSectionJet th = section_jet(eq, x0, y0, 3);
    RSectionJet lifted = lift_section_jet(map_jet(f1, f2, x0, y0, 5), th);
    Equation te = transformed_equation(eq, m);
    CHECK(section_jet(te, lifted.base(1), lifted.base(2), 3) == lifted);
    // composed form evaluated at p gives the value at f(p)
    Equation pf = pushforward_equation(eq, f1, f2);
    for (int i = 0; i < 4; ++i)
      CHECK(evaluate(pf.a[i], x0, y0) == lifted.u(i + 1, 0, 0));
  }
}

TEST_CASE("linear equations stay linearizable") {
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    Rational x0 = rng.rational(), y0 = rng.rational();
    MapExprs m = rng.point_map(3, x0, y0);
    RSectionJet lifted = lift_section_jet(map_jet(m.f1, m.f2, x0, y0, 4),
                                          RSectionJet(x0, y0, 2));
    auto [f1, f2] = F12(lifted);
    CHECK(f1 == 0);
    CHECK(f2 == 0);
  }
}

TEST_CASE("functoriality and round trip") {
  Rng rng(8);
  for (int t = 0; t < 8; ++t) {
    int k = static_cast<int>(rng.integer(0, 3));
    RSectionJet th = rng.section(k);
    Rational x0 = th.base(1), y0 = th.base(2);
    MapExprs mg = rng.point_map(3, x0, y0);
    MapJet gj = map_jet(mg.f1, mg.f2, x0, y0, k + 2);
    auto [q1, q2] = gj.image();
    MapExprs mf = rng.point_map(3, q1, q2);
    MapJet fj = map_jet(mf.f1, mf.f2, q1, q2, k + 2);
    RSectionJet two_step = lift_section_jet(fj, lift_section_jet(gj, th));
    CHECK(lift_section_jet(compose(fj, gj), th) == two_step);
    CHECK(lift_section_jet(invert_map_jet(gj), lift_section_jet(gj, th)) == th);
  }
}

TEST_CASE("lifting needs a (k+2)-jet of the map") {
  Rng rng(9);
  RSectionJet th = rng.section(2);
  MapJet f = MapJet::identity(th.base(1), th.base(2), 3);
  CHECK_THROWS_AS(lift_section_jet(f, th), std::invalid_argument);
  CHECK_NOTHROW(lift_section_jet(MapJet::identity(th.base(1), th.base(2), 4), th));
}

TEST_CASE("pushed field jets respect brackets") {
  Rng rng(10);
  for (int t = 0; t < 5; ++t) {
    Rational x0 = rng.rational(), y0 = rng.rational();
    MapExprs m = rng.point_map(3, x0, y0);
    MapJet f = map_jet(m.f1, m.f2, x0, y0, 5);
    RFieldJet A = field_jet(rng.polynomial(3), rng.polynomial(3), x0, y0, 4);
    RFieldJet B = field_jet(rng.polynomial(3), rng.polynomial(3), x0, y0, 4);
    CHECK(bracket(push_field_jet(f, A), push_field_jet(f, B)) ==
          push_field_jet(f, bracket(A, B)));
  }
}

TEST_CASE("A-spaces are equivariant") {
  Rng rng(11);
  for (int t = 0; t < 4; ++t) {
    for (int k = 0; k <= 2; ++k) {
      RSectionJet th = rng.section(k + 1);
      Rational x0 = th.base(1), y0 = th.base(2);
      MapExprs m = rng.point_map(3, x0, y0);
      MapJet f = map_jet(m.f1, m.f2, x0, y0, k + 3);
      LinearSubspace A = a_space(th, k);
      Matrix<Rational> pushed;
      for (const auto &v : A.basis())
        pushed.push_back(
            from_field_jet(push_field_jet(f, to_field_jet(v, A.ambient(), k + 2)), A.ambient()));
      CHECK(LinearSubspace(A.ambient(), pushed) == a_space(lift_section_jet(f, th), k));
    }
  }
}
