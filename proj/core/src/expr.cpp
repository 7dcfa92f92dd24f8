#include "odeinv/expr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace odeinv {

using Node = CoeffExpr::Node;
using Kind = CoeffExpr::Kind;

CoeffExpr CoeffExpr::make(Node n) { return CoeffExpr(std::make_shared<const Node>(std::move(n))); }

CoeffExpr::CoeffExpr(const Rational &c) {
  Node n{Kind::Constant, c, 0, 0, nullptr, nullptr};
  node_ = std::make_shared<const Node>(std::move(n));
}

CoeffExpr CoeffExpr::variable(int axis) {
  return make(Node{Kind::Variable, Rational(0), axis, 0, nullptr, nullptr});
}
CoeffExpr CoeffExpr::x() { return variable(1); }
CoeffExpr CoeffExpr::y() { return variable(2); }

CoeffExpr CoeffExpr::child(int which) const {
  return CoeffExpr(which == 0 ? node_->a : node_->b);
}

std::optional<Rational> CoeffExpr::constant_value() const {
  if (node_->kind == Kind::Constant)
    return node_->value;
  return std::nullopt;
}

CoeffExpr operator+(const CoeffExpr &a, const CoeffExpr &b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb)
    return CoeffExpr(Rational(*ca + *cb));
  if (ca && *ca == 0)
    return b;
  if (cb && *cb == 0)
    return a;
  return CoeffExpr::make(Node{Kind::Sum, Rational(0), 0, 0, a.node_, b.node_});
}

CoeffExpr CoeffExpr::operator-() const {
  if (auto c = constant_value())
    return CoeffExpr(Rational(-*c));
  if (node_->kind == Kind::Negate)
    return child(0);
  return make(Node{Kind::Negate, Rational(0), 0, 0, node_, nullptr});
}

CoeffExpr operator-(const CoeffExpr &a, const CoeffExpr &b) { return a + (-b); }

CoeffExpr operator*(const CoeffExpr &a, const CoeffExpr &b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (ca && cb)
    return CoeffExpr(Rational(*ca * *cb));
  if ((ca && *ca == 0) || (cb && *cb == 0))
    return CoeffExpr(Rational(0));
  if (ca && *ca == 1)
    return b;
  if (cb && *cb == 1)
    return a;
  if (ca && *ca == -1)
    return -b;
  if (cb && *cb == -1)
    return -a;
  return CoeffExpr::make(Node{Kind::Product, Rational(0), 0, 0, a.node_, b.node_});
}

CoeffExpr operator/(const CoeffExpr &a, const CoeffExpr &b) {
  auto ca = a.constant_value(), cb = b.constant_value();
  if (cb && *cb == 0)
    throw EvaluationError("division by the constant zero");
  if (ca && cb)
    return CoeffExpr(Rational(*ca / *cb));
  if (cb && *cb == 1)
    return a;
  if (ca && *ca == 0)
    return CoeffExpr(Rational(0));
  return CoeffExpr::make(Node{Kind::Quotient, Rational(0), 0, 0, a.node_, b.node_});
}

CoeffExpr CoeffExpr::pow(int n) const {
  if (auto c = constant_value())
    return CoeffExpr(power(*c, n));
  if (n == 0)
    return CoeffExpr(Rational(1));
  if (n == 1)
    return *this;
  return make(Node{Kind::Power, Rational(0), 0, n, node_, nullptr});
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  CoeffExpr parse() {
    CoeffExpr e = sum();
    skip();
    if (pos_ != s_.size())
      throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  CoeffExpr sum() {
    CoeffExpr e = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        e = e + term();
      } else if (peek('-')) {
        ++pos_;
        e = e - term();
      } else {
        return e;
      }
    }
  }

  CoeffExpr term() {
    CoeffExpr e = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        e = e * unary();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        CoeffExpr d = unary();
        if (auto c = d.constant_value(); c && *c == 0)
          throw ParseError(at, "division by zero");
        e = e / d;
      } else {
        return e;
      }
    }
  }

  CoeffExpr unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return powexpr();
  }

  CoeffExpr powexpr() {
    CoeffExpr base = primary();
    if (!peek('^'))
      return base;
    ++pos_;
    skip();
    std::size_t at = pos_;
    CoeffExpr ex = unary();
    auto c = ex.constant_value();
    if (!c)
      throw ParseError(at, "exponent must be an integer constant");
    if (c->get_den() != 1)
      throw ParseError(at, "non-integer exponent");
    if (!c->get_num().fits_sint_p() || abs(c->get_num()) > 4096)
      throw ParseError(at, "exponent out of range");
    int n = static_cast<int>(c->get_num().get_si());
    if (auto bc = base.constant_value(); bc && *bc == 0 && n < 0)
      throw ParseError(at, "zero to a negative power");
    return base.pow(n);
  }

  CoeffExpr primary() {
    skip();
    if (pos_ >= s_.size())
      throw ParseError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      CoeffExpr e = sum();
      if (!peek(')'))
        throw ParseError(pos_, "expected ')'");
      ++pos_;
      return e;
    }
    if (c == 'x' || c == 'y') {
      ++pos_;
      if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        throw ParseError(pos_ - 1, "unknown identifier");
      return c == 'x' ? CoeffExpr::x() : CoeffExpr::y();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
      }
      std::string_view lit = s_.substr(start, pos_ - start);
      if (lit == ".")
        throw ParseError(start, "malformed number");
      return CoeffExpr(parse_rational(lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c)))
      throw ParseError(pos_, "unknown identifier");
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int precedence(Kind k) {
  switch (k) {
  case Kind::Sum:
    return 1;
  case Kind::Product:
  case Kind::Quotient:
    return 2;
  case Kind::Negate:
    return 3;
  case Kind::Power:
    return 4;
  default:
    return 5;
  }
}

void print(const Node &n, int min_prec, std::string &out) {
  int p = precedence(n.kind);
  if (n.kind == Kind::Constant && (n.value < 0 || n.value.get_den() != 1))
    p = 0;
  bool paren = p < min_prec;
  if (paren)
    out += '(';
  switch (n.kind) {
  case Kind::Constant:
    out += n.value.get_str();
    break;
  case Kind::Variable:
    out += n.var == 1 ? 'x' : 'y';
    break;
  case Kind::Negate:
    out += '-';
    print(*n.a, 4, out);
    break;
  case Kind::Sum:
    print(*n.a, 1, out);
    if (n.b->kind == Kind::Negate) {
      out += " - ";
      print(*n.b->a, 2, out);
    } else {
      out += " + ";
      print(*n.b, 2, out);
    }
    break;
  case Kind::Product:
    print(*n.a, 2, out);
    out += '*';
    print(*n.b, 3, out);
    break;
  case Kind::Quotient:
    print(*n.a, 2, out);
    out += '/';
    print(*n.b, 3, out);
    break;
  case Kind::Power:
    print(*n.a, 5, out);
    out += '^';
    if (n.exponent < 0)
      out += "(" + std::to_string(n.exponent) + ")";
    else
      out += std::to_string(n.exponent);
    break;
  }
  if (paren)
    out += ')';
}

} // namespace

CoeffExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const CoeffExpr &e) {
  std::string out;
  print(e.node(), 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// evaluation and rewriting

namespace {

struct TaylorEval {
  Rational x0, y0;
  int k;
  std::unordered_map<const Node *, TaylorJet2> memo;

  const TaylorJet2 &operator()(const Node &n) {
    auto it = memo.find(&n);
    if (it != memo.end())
      return it->second;
    TaylorJet2 r;
    switch (n.kind) {
    case Kind::Constant:
      r = TaylorJet2::constant(n.value, x0, y0, k);
      break;
    case Kind::Variable:
      r = TaylorJet2::coordinate(n.var, x0, y0, k);
      break;
    case Kind::Negate:
      r = -(*this)(*n.a);
      break;
    case Kind::Sum:
      r = (*this)(*n.a) + (*this)(*n.b);
      break;
    case Kind::Product:
      r = (*this)(*n.a) * (*this)(*n.b);
      break;
    case Kind::Quotient: {
      const TaylorJet2 &d = (*this)(*n.b);
      if (sgn(d.value()) == 0)
        throw EvaluationError("division by zero at (" + x0.get_str() + "," + y0.get_str() + ")");
      r = (*this)(*n.a) / d;
      break;
    }
    case Kind::Power: {
      const TaylorJet2 &b = (*this)(*n.a);
      if (n.exponent < 0 && sgn(b.value()) == 0)
        throw EvaluationError("division by zero at (" + x0.get_str() + "," + y0.get_str() + ")");
      r = b.pow(n.exponent);
      break;
    }
    }
    return memo.emplace(&n, std::move(r)).first->second;
  }
};

} // namespace

TaylorJet2 taylor(const CoeffExpr &e, const Rational &x0, const Rational &y0, int k) {
  TaylorEval ev{x0, y0, k, {}};
  return ev(e.node());
}

Rational evaluate(const CoeffExpr &e, const Rational &x0, const Rational &y0) {
  return taylor(e, x0, y0, 0).value();
}

namespace {

struct Deriv {
  int axis;
  std::unordered_map<const Node *, CoeffExpr> memo;

  CoeffExpr operator()(const CoeffExpr &e) {
    const Node *key = &e.node();
    auto it = memo.find(key);
    if (it != memo.end())
      return it->second;
    CoeffExpr r;
    switch (e.kind()) {
    case Kind::Constant:
      r = CoeffExpr(0);
      break;
    case Kind::Variable:
      r = CoeffExpr(e.node().var == axis ? 1 : 0);
      break;
    case Kind::Negate:
      r = -(*this)(e.child(0));
      break;
    case Kind::Sum:
      r = (*this)(e.child(0)) + (*this)(e.child(1));
      break;
    case Kind::Product:
      r = (*this)(e.child(0)) * e.child(1) + e.child(0) * (*this)(e.child(1));
      break;
    case Kind::Quotient: {
      CoeffExpr a = e.child(0), b = e.child(1);
      r = ((*this)(a)*b - a * (*this)(b)) / b.pow(2);
      break;
    }
    case Kind::Power: {
      int n = e.node().exponent;
      CoeffExpr a = e.child(0);
      r = CoeffExpr(n) * a.pow(n - 1) * (*this)(a);
      break;
    }
    }
    memo.emplace(key, r);
    return r;
  }
};

struct Subst {
  CoeffExpr ex, ey;
  std::unordered_map<const Node *, CoeffExpr> memo;

  CoeffExpr operator()(const CoeffExpr &e) {
    const Node *key = &e.node();
    auto it = memo.find(key);
    if (it != memo.end())
      return it->second;
    CoeffExpr r;
    switch (e.kind()) {
    case Kind::Constant:
      r = e;
      break;
    case Kind::Variable:
      r = e.node().var == 1 ? ex : ey;
      break;
    case Kind::Negate:
      r = -(*this)(e.child(0));
      break;
    case Kind::Sum:
      r = (*this)(e.child(0)) + (*this)(e.child(1));
      break;
    case Kind::Product:
      r = (*this)(e.child(0)) * (*this)(e.child(1));
      break;
    case Kind::Quotient:
      r = (*this)(e.child(0)) / (*this)(e.child(1));
      break;
    case Kind::Power:
      r = (*this)(e.child(0)).pow(e.node().exponent);
      break;
    }
    memo.emplace(key, r);
    return r;
  }
};

std::optional<int> poly_degree(const Node &n) {
  switch (n.kind) {
  case Kind::Constant:
    return 0;
  case Kind::Variable:
    return 1;
  case Kind::Negate:
    return poly_degree(*n.a);
  case Kind::Sum: {
    auto a = poly_degree(*n.a), b = poly_degree(*n.b);
    if (!a || !b)
      return std::nullopt;
    return std::max(*a, *b);
  }
  case Kind::Product: {
    auto a = poly_degree(*n.a), b = poly_degree(*n.b);
    if (!a || !b)
      return std::nullopt;
    return *a + *b;
  }
  case Kind::Quotient: {
    auto a = poly_degree(*n.a), b = poly_degree(*n.b);
    if (!a || !b || *b != 0)
      return std::nullopt;
    return a;
  }
  case Kind::Power: {
    auto a = poly_degree(*n.a);
    if (!a)
      return std::nullopt;
    if (n.exponent < 0)
      return *a == 0 ? std::optional<int>(0) : std::nullopt;
    return *a * n.exponent;
  }
  }
  return std::nullopt;
}

} // namespace

CoeffExpr derivative(const CoeffExpr &e, int axis) {
  Deriv d{axis, {}};
  return d(e);
}

CoeffExpr substitute(const CoeffExpr &e, const CoeffExpr &ex, const CoeffExpr &ey) {
  Subst s{ex, ey, {}};
  return s(e);
}

std::optional<int> polynomial_degree(const CoeffExpr &e) { return poly_degree(e.node()); }

RSectionJet section_jet(const Equation &eq, const Rational &x0, const Rational &y0, int k) {
  std::array<TaylorJet2, 4> t;
  for (int i = 0; i < 4; ++i)
    t[i] = taylor(eq.a[i], x0, y0, k);
  return section_jet_from_taylor(t, k);
}

RSectionJet section_jet(const CoeffExpr &a0, const CoeffExpr &a1, const CoeffExpr &a2,
                        const CoeffExpr &a3, const Rational &x0, const Rational &y0, int k) {
  return section_jet(Equation{{a0, a1, a2, a3}}, x0, y0, k);
}

// ---------------------------------------------------------------------------
// equation files

EquationFile parse_equation_file(std::string_view text) {
  EquationFile out;
  std::array<std::optional<CoeffExpr>, 4> coeffs;
  std::optional<CoeffExpr> f1, f2, g1, g2;
  bool have_eq = false, have_map = false;
  std::string section;
  int map_line = 0;

  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();

    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"')
        in_quote = !in_quote;
      else if (line[i] == '#' && !in_quote) {
        line.resize(i);
        break;
      }
    }
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos)
      continue;
    std::size_t e = line.find_last_not_of(" \t");
    int col = static_cast<int>(b) + 1;
    std::string body = line.substr(b, e - b + 1);

    if (body.front() == '[') {
      if (body.back() != ']')
        throw FileFormatError(lineno, col, "unterminated section header");
      std::string name = body.substr(1, body.size() - 2);
      name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
      if (name == "equation") {
        if (have_eq)
          throw FileFormatError(lineno, col, "duplicate [equation] block");
        have_eq = true;
      } else if (name == "map") {
        if (have_map)
          throw FileFormatError(lineno, col, "duplicate [map] block");
        have_map = true;
        map_line = lineno;
      } else {
        throw FileFormatError(lineno, col, "unknown section [" + name + "]");
      }
      section = name;
      continue;
    }

    std::size_t eqpos = body.find('=');
    if (eqpos == std::string::npos)
      throw FileFormatError(lineno, col, "expected key = \"expression\"");
    std::string key = body.substr(0, eqpos);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    std::size_t vb = body.find_first_not_of(" \t", eqpos + 1);
    if (vb == std::string::npos)
      throw FileFormatError(lineno, col + static_cast<int>(eqpos) + 1, "missing value");
    std::string value;
    int value_col;
    if (body[vb] == '"') {
      std::size_t close = body.find('"', vb + 1);
      if (close == std::string::npos)
        throw FileFormatError(lineno, col + static_cast<int>(vb), "unterminated string");
      if (body.find_first_not_of(" \t", close + 1) != std::string::npos)
        throw FileFormatError(lineno, col + static_cast<int>(close) + 1,
                              "trailing characters after value");
      value = body.substr(vb + 1, close - vb - 1);
      value_col = col + static_cast<int>(vb) + 1;
    } else {
      value = body.substr(vb);
      value_col = col + static_cast<int>(vb);
    }

    CoeffExpr parsed;
    try {
      parsed = parse_expr(value);
    } catch (const ParseError &pe) {
      std::string msg = pe.what();
      msg = msg.substr(0, msg.rfind(" at offset"));
      throw FileFormatError(lineno, value_col + static_cast<int>(pe.offset),
                            "in '" + key + "': " + msg);
    } catch (const EvaluationError &ee) {
      throw FileFormatError(lineno, value_col, "in '" + key + "': " + ee.what());
    }

    auto assign = [&](std::optional<CoeffExpr> &slot) {
      if (slot)
        throw FileFormatError(lineno, col, "duplicate key '" + key + "'");
      slot = parsed;
    };
    if (section == "equation") {
      if (key.size() == 2 && key[0] == 'a' && key[1] >= '0' && key[1] <= '3')
        assign(coeffs[key[1] - '0']);
      else
        throw FileFormatError(lineno, col, "unknown key '" + key + "' in [equation]");
    } else if (section == "map") {
      if (key == "f1")
        assign(f1);
      else if (key == "f2")
        assign(f2);
      else if (key == "g1")
        assign(g1);
      else if (key == "g2")
        assign(g2);
      else
        throw FileFormatError(lineno, col, "unknown key '" + key + "' in [map]");
    } else {
      throw FileFormatError(lineno, col, "key outside of a section");
    }
  }

  if (have_eq) {
    Equation eq;
    for (int i = 0; i < 4; ++i)
      eq.a[i] = coeffs[i] ? *coeffs[i] : CoeffExpr(0);
    out.equation = eq;
  }
  if (have_map) {
    if (!f1 || !f2)
      throw FileFormatError(map_line, 1, "[map] needs both f1 and f2");
    if (bool(g1) != bool(g2))
      throw FileFormatError(map_line, 1, "[map] inverse needs both g1 and g2");
    out.map = MapExprs{*f1, *f2, g1, g2};
  }
  return out;
}

EquationFile read_equation_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_equation_file(ss.str());
}

} // namespace odeinv
