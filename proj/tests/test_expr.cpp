#include "doctest.h"
#include "random_inputs.hpp"

#include "odeinv/expr.hpp"

using namespace odeinv;
using odeinv::testing::Rng;

namespace {
Rational R(long p, long q = 1) { return make_rational(p, q); }
} // namespace

TEST_CASE("parse: literals, powers and precedence") {
  CoeffExpr zero = parse_expr("0");
  REQUIRE(zero.kind() == CoeffExpr::Kind::Constant);
  CHECK(*zero.constant_value() == 0);

  CoeffExpr y2 = parse_expr("y^2");
  REQUIRE(y2.kind() == CoeffExpr::Kind::Power);
  CHECK(y2.node().exponent == 2);
  CHECK(y2.child(0).kind() == CoeffExpr::Kind::Variable);
  CHECK(y2.child(0).node().var == 2);

  // unary minus sits below ^, ^ is right associative
  CHECK(evaluate(parse_expr("-x^2"), R(3), R(0)) == -9);
  CHECK(evaluate(parse_expr("2^3^2"), R(0), R(0)) == 512);
  CHECK(evaluate(parse_expr("1 - 2 - 3"), R(0), R(0)) == -4);
  CHECK(evaluate(parse_expr("12/3/2"), R(0), R(0)) == 2);
  CHECK(evaluate(parse_expr("x^-2"), R(2), R(0)) == R(1, 4));
  CHECK(evaluate(parse_expr("0.25*y + 3/4"), R(0), R(1)) == 1);
}

TEST_CASE("parse: errors carry offsets") {
  try {
    parse_expr("x*(y");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.offset == 4);
  }
  CHECK_THROWS_AS(parse_expr("x^(1/2)"), ParseError);
  CHECK_THROWS_AS(parse_expr("x^y"), ParseError);
  CHECK_THROWS_AS(parse_expr("z + 1"), ParseError);
  CHECK_THROWS_AS(parse_expr("1/0"), ParseError);
  CHECK_THROWS_AS(parse_expr(""), ParseError);
  CHECK_THROWS_AS(parse_expr("x y"), ParseError);
  try {
    parse_expr("x + ^");
  } catch (const ParseError &e) {
    CHECK(e.offset == 4);
  }
}

TEST_CASE("printer output reparses to the same function") {
  Rng rng(11);
  for (const char *src : {"-x^2", "(x+y)^3/(1-x)", "x - (y - 1)", "(-x)^2", "-3/4*x", "x^(-2)"}) {
    CoeffExpr e = parse_expr(src);
    CoeffExpr back = parse_expr(to_string(e));
    for (int t = 0; t < 5; ++t) {
      Rational a = rng.nonzero_rational(), b = rng.nonzero_rational();
      if (evaluate(CoeffExpr(1) - CoeffExpr::x(), a, b) == 0)
        continue;
      CHECK(taylor(e, a, b, 3) == taylor(back, a, b, 3));
    }
  }
}

TEST_CASE("taylor: worked examples") {
  TaylorJet2 t = taylor(parse_expr("y^2"), R(0), R(0), 2);
  for (int d = 0; d <= 2; ++d)
    for (int n = 0; n <= d; ++n)
      CHECK(t.coeff(d - n, n) == (d == 2 && n == 2 ? 1 : 0));

  TaylorJet2 xy = taylor(parse_expr("x*y"), R(1), R(2), 1);
  CHECK(xy.coeff(0, 0) == 2);
  CHECK(xy.coeff(1, 0) == 2);
  CHECK(xy.coeff(0, 1) == 1);

  // geometric series: every pure-x coefficient is 1
  TaylorJet2 g = taylor(parse_expr("1/(1-x)"), R(0), R(0), 6);
  for (int m = 0; m <= 6; ++m) {
    CHECK(g.coeff(m, 0) == 1);
    for (int n = 1; n + m <= 6; ++n)
      CHECK(g.coeff(m, n) == 0);
  }

  CHECK_THROWS_AS(taylor(parse_expr("1/x"), R(0), R(1), 2), EvaluationError);
  CHECK_THROWS_AS(taylor(parse_expr("y^-1"), R(1), R(0), 2), EvaluationError);
}

TEST_CASE("taylor: 1/(1-x-y) has binomial coefficients") {
  TaylorJet2 g = taylor(parse_expr("1/(1-x-y)"), R(0), R(0), 6);
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; m + n <= 6; ++n)
      CHECK(g.coeff(m, n) == factorial(m + n) / (factorial(m) * factorial(n)));
}

TEST_CASE("taylor: truncation, product rule and round trip") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    CoeffExpr e1 = rng.polynomial(4), e2 = rng.polynomial(3);
    Rational a = rng.rational(), b = rng.rational();
    for (int k = 1; k <= 5; ++k)
      CHECK(taylor(e1, a, b, k).truncated(k - 1) == taylor(e1, a, b, k - 1));
    CHECK(taylor(e1 * e2, a, b, 5) == taylor(e1, a, b, 5) * taylor(e2, a, b, 5));
    // quotient: (e1/(1+e2^2)) * (1+e2^2) = e1
    CoeffExpr den = CoeffExpr(1) + e2 * e2;
    CHECK(taylor(e1 / den, a, b, 4) * taylor(den, a, b, 4) == taylor(e1, a, b, 4));
  }
  // round trip: coefficients at 0 reproduce the monomial coefficients
  for (int trial = 0; trial < 20; ++trial) {
    int deg = 4;
    std::vector<Rational> c;
    CoeffExpr e(0);
    for (int d = 0; d <= deg; ++d)
      for (int n = 0; n <= d; ++n) {
        c.push_back(rng.rational());
        e = e + CoeffExpr(c.back()) * CoeffExpr::x().pow(d - n) * CoeffExpr::y().pow(n);
      }
    TaylorJet2 t = taylor(e, R(0), R(0), deg);
    std::size_t idx = 0;
    for (int d = 0; d <= deg; ++d)
      for (int n = 0; n <= d; ++n)
        CHECK(t.coeff(d - n, n) == c[idx++]);
  }
}

TEST_CASE("symbolic derivative agrees with the jet derivative") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    CoeffExpr e = rng.polynomial(3) / (CoeffExpr(2) + CoeffExpr::x() * CoeffExpr::x()) +
                  rng.polynomial(2).pow(2);
    Rational a = rng.rational(), b = rng.rational();
    for (int axis = 1; axis <= 2; ++axis)
      CHECK(taylor(derivative(e, axis), a, b, 3) == taylor(e, a, b, 4).derivative(axis));
  }
}

TEST_CASE("composition of jets matches substitution") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    CoeffExpr h = rng.polynomial(3), g1 = rng.polynomial(2), g2 = rng.polynomial(2);
    Rational a = rng.rational(), b = rng.rational();
    TaylorJet2 tg1 = taylor(g1, a, b, 4), tg2 = taylor(g2, a, b, 4);
    TaylorJet2 th = taylor(h, tg1.value(), tg2.value(), 4);
    CHECK(compose(th, tg1, tg2) == taylor(substitute(h, g1, g2), a, b, 4));
  }
}

TEST_CASE("section_jet: index convention") {
  CoeffExpr z(0);
  RSectionJet s0 = section_jet(z, z, z, z, R(3), R(-1), 3);
  for (int i = 1; i <= 4; ++i)
    for (int d = 0; d <= 3; ++d)
      for (int n = 0; n <= d; ++n)
        CHECK(s0.u(i, d - n, n) == 0);

  RSectionJet s = section_jet(parse_expr("y^2"), z, z, z, R(0), R(0), 2);
  CHECK(s.u(1, 0, 2) == 2);
  for (int i = 1; i <= 4; ++i)
    for (int d = 0; d <= 2; ++d)
      for (int n = 0; n <= d; ++n)
        if (!(i == 1 && n == 2))
          CHECK(s.u(i, d - n, n) == 0);

  RSectionJet t = section_jet(z, z, z, parse_expr("x"), R(0), R(0), 2);
  CHECK(t.u(4, 1, 0) == 1);
  CHECK(t.u(4, 0, 0) == 0);
  CHECK(t.u(1, 1, 0) == 0);
}

TEST_CASE("equation files") {
  const char *text = R"(
# a comment
[equation]
a0 = "y^2"   # trailing comment
  a3="1"
[map]
f1 = "y"
f2 = "x"
)";
  EquationFile f = parse_equation_file(text);
  REQUIRE(f.equation);
  REQUIRE(f.map);
  CHECK(evaluate(f.equation->a[0], R(0), R(3)) == 9);
  CHECK(evaluate(f.equation->a[1], R(1), R(3)) == 0);
  CHECK(evaluate(f.equation->a[3], R(1), R(3)) == 1);
  CHECK(evaluate(f.map->f1, R(1), R(2)) == 2);
  CHECK_FALSE(f.map->g1);

  try {
    parse_equation_file("[equation]\na0 = \"x*(y\"\n");
    FAIL("expected a file error");
  } catch (const FileFormatError &e) {
    CHECK(e.line == 2);
    CHECK(e.column == 11);
  }
  CHECK_THROWS_AS(parse_equation_file("[equation]\nb0 = \"1\"\n"), FileFormatError);
  CHECK_THROWS_AS(parse_equation_file("a0 = \"1\"\n"), FileFormatError);
  CHECK_THROWS_AS(parse_equation_file("[eq]\n"), FileFormatError);
  CHECK_THROWS_AS(parse_equation_file("[map]\nf1 = \"x\"\n"), FileFormatError);
  CHECK_THROWS_AS(parse_equation_file("[equation]\na0 = \"1\"\na0 = \"2\"\n"), FileFormatError);
}
