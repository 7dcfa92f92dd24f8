#pragma once

#include "odeinv/expr.hpp"
#include "odeinv/invariants.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace odeinv {

using Point = std::pair<Rational, Rational>;

struct NonRegularPointError : std::runtime_error {
  Point where;
  NonRegularPointError(const std::string &what, Point p)
      : std::runtime_error(what), where(std::move(p)) {}
};

// "x0,y0:x1,y1:nx,ny": a rectangle of offsets from the marked point with
// nx by ny samples (corners included).
struct GridSpec {
  Rational x0, y0, x1, y1;
  int nx = 1, ny = 1;
  std::vector<Point> points(const Point &center) const;
};
GridSpec parse_grid(std::string_view text);
std::string to_string(const GridSpec &g);

// Value r t^e at a point with t^5 = F3, compared through its fifth power.
struct InvariantValue {
  ScaledRational v;
  Rational F3;
  Rational fifth_power() const;
  double approx() const { return approximate(v, F3); }
};
bool same_value(const InvariantValue &a, const InvariantValue &b);

// The 18 functions I^1..I^6, xi_1(I^1..I^6), xi_2(I^1..I^6), in this order.
constexpr int kInvariantCount = 18;
std::string invariant_name(int index);

struct InvariantTuple {
  std::array<InvariantValue, kInvariantCount> values;
};
InvariantTuple invariant_tuple(const Equation &eq, const Point &p);

enum class RegularCase { ConstantInvariants, OneGenerator, TwoIndependent, Indeterminate };
std::string to_string(RegularCase c);

struct InvariantSignature {
  RegularCase kind = RegularCase::Indeterminate;
  std::vector<int> generators; // indices into the 18 functions
  Point point;
  InvariantTuple at_point;
  std::string note;
};

// Requires F3 != 0 at p and on the grid.
void check_regular(const Equation &eq, const Point &p, const std::vector<Point> &grid);
InvariantSignature signature(const Equation &eq, const Point &p, const GridSpec &grid);
RegularCase classify_regular_case(const Equation &eq, const Point &p, const GridSpec &grid);

enum class Verdict { NecessaryConditionsPass, Fail, CaseMismatch, Inconclusive };
std::string to_string(Verdict v);
int exit_code(Verdict v);

struct GridMatch {
  Point p1, p2;
  bool agree = true;
};

struct EquivalenceReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  InvariantSignature first, second;
  std::vector<GridMatch> matches;
  std::vector<std::string> warnings;
};

EquivalenceReport check_equivalence(const Equation &eq1, const Point &p1, const Equation &eq2,
                                    const Point &p2, const GridSpec &grid);

} // namespace odeinv
