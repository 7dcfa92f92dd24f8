#pragma once

#include "odeinv/rational.hpp"
#include "odeinv/section_jet.hpp"
#include "odeinv/taylor_jet.hpp"

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace odeinv {

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(std::size_t off, const std::string &msg)
      : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable expression tree over x, y and rational constants. Subtrees are
// shared, so copies are cheap.
class CoeffExpr {
public:
  enum class Kind { Constant, Variable, Negate, Sum, Product, Quotient, Power };

  struct Node {
    Kind kind;
    Rational value;   // Constant
    int var = 0;      // Variable: 1 = x, 2 = y
    int exponent = 0; // Power
    std::shared_ptr<const Node> a, b;
  };

  CoeffExpr() : CoeffExpr(Rational(0)) {}
  CoeffExpr(const Rational &c);
  CoeffExpr(long c) : CoeffExpr(Rational(c)) {}

  static CoeffExpr x();
  static CoeffExpr y();
  static CoeffExpr variable(int axis);

  Kind kind() const { return node_->kind; }
  const Node &node() const { return *node_; }
  CoeffExpr child(int which) const;

  // Constant value if the tree is a literal constant.
  std::optional<Rational> constant_value() const;

  friend CoeffExpr operator+(const CoeffExpr &a, const CoeffExpr &b);
  friend CoeffExpr operator-(const CoeffExpr &a, const CoeffExpr &b);
  friend CoeffExpr operator*(const CoeffExpr &a, const CoeffExpr &b);
  friend CoeffExpr operator/(const CoeffExpr &a, const CoeffExpr &b);
  CoeffExpr operator-() const;
  CoeffExpr pow(int n) const;

private:
  explicit CoeffExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static CoeffExpr make(Node n);
  std::shared_ptr<const Node> node_;
};

CoeffExpr parse_expr(std::string_view text);
std::string to_string(const CoeffExpr &e);

TaylorJet2 taylor(const CoeffExpr &e, const Rational &x0, const Rational &y0, int k);
Rational evaluate(const CoeffExpr &e, const Rational &x0, const Rational &y0);

CoeffExpr derivative(const CoeffExpr &e, int axis);
// Replaces x by ex and y by ey.
CoeffExpr substitute(const CoeffExpr &e, const CoeffExpr &ex, const CoeffExpr &ey);

// Total degree if e is a polynomial (no division by non-constants, no
// negative powers); nullopt otherwise.
std::optional<int> polynomial_degree(const CoeffExpr &e);

// y'' = a3 y'^3 + a2 y'^2 + a1 y' + a0; a[i] is a^i.
struct Equation {
  std::array<CoeffExpr, 4> a;
};

RSectionJet section_jet(const Equation &eq, const Rational &x0, const Rational &y0, int k);
RSectionJet section_jet(const CoeffExpr &a0, const CoeffExpr &a1, const CoeffExpr &a2,
                        const CoeffExpr &a3, const Rational &x0, const Rational &y0, int k);

struct MapExprs {
  CoeffExpr f1, f2;
  std::optional<CoeffExpr> g1, g2; // optional explicit inverse
};

struct EquationFile {
  std::optional<Equation> equation;
  std::optional<MapExprs> map;
};

struct FileFormatError : std::runtime_error {
  int line, column;
  FileFormatError(int l, int c, const std::string &msg)
      : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " +
                           msg),
        line(l), column(c) {}
};

EquationFile parse_equation_file(std::string_view text);
EquationFile read_equation_file(const std::string &path);

} // namespace odeinv
