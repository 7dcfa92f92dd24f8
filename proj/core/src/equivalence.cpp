#include "odeinv/equivalence.hpp"

#include <map>
#include <sstream>

namespace odeinv {

namespace {

std::string point_string(const Point &p) {
  return "(" + to_string(p.first) + ", " + to_string(p.second) + ")";
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

Rational F3_at(const Equation &eq, const Point &p) {
  return *f_invariants(section_jet(eq, p.first, p.second, 3)).F3;
}

InvariantValue entry(const ScaledRational &v, const Rational &F3) { return {v, F3}; }

// Value of the first six functions only; enough for constancy and I-generators.
std::array<InvariantValue, 6> first_six(const Equation &eq, const Point &p) {
  RSectionJet s = section_jet(eq, p.first, p.second, 4);
  Rational F3 = *f_invariants(s).F3;
  auto I = scalar_invariants(s);
  std::array<InvariantValue, 6> out;
  for (int k = 0; k < 6; ++k)
    out[k] = entry(I[k], F3);
  return out;
}

bool pair_independent(const std::array<Rational, 2> &a, const std::array<Rational, 2> &b) {
  return a[0] * b[1] - a[1] * b[0] != 0;
}

// (x, y)-gradients of all 18 functions, through the base-shifted 6-jet.
std::array<std::array<Rational, 2>, kInvariantCount> coordinate_gradients(const Equation &eq,
                                                                         const Point &p) {
  auto L = lie_derivatives(shift_lift(section_jet(eq, p.first, p.second, 6)));
  std::array<std::array<Rational, 2>, kInvariantCount> g;
  for (int k = 0; k < 6; ++k) {
    g[k] = {L.I[k].r.d[0], L.I[k].r.d[1]};
    g[6 + k] = {L.xi[0][k].r.d[0], L.xi[0][k].r.d[1]};
    g[12 + k] = {L.xi[1][k].r.d[0], L.xi[1][k].r.d[1]};
  }
  return g;
}

} // namespace

std::vector<Point> GridSpec::points(const Point &center) const {
  std::vector<Point> out;
  for (int i = 0; i < nx; ++i) {
    Rational dx = nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      Rational dy = ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1);
      out.push_back({center.first + dx, center.second + dy});
    }
  }
  return out;
}

GridSpec parse_grid(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("grid spec must look like x0,y0:x1,y1:nx,ny");
  auto pair = [](std::string_view s) {
    auto xy = split(s, ',');
    if (xy.size() != 2)
      throw std::invalid_argument("grid spec component '" + std::string(s) + "' needs two values");
    return xy;
  };
  auto a = pair(parts[0]), b = pair(parts[1]), n = pair(parts[2]);
  GridSpec g;
  g.x0 = parse_rational(a[0]);
  g.y0 = parse_rational(a[1]);
  g.x1 = parse_rational(b[0]);
  g.y1 = parse_rational(b[1]);
  auto count = [](std::string_view s) {
    Rational q = parse_rational(s);
    if (q.get_den() != 1 || q < 1 || q > 1000)
      throw std::invalid_argument("grid counts must be integers in 1..1000");
    return static_cast<int>(q.get_num().get_si());
  };
  g.nx = count(n[0]);
  g.ny = count(n[1]);
  return g;
}

std::string to_string(const GridSpec &g) {
  return to_string(g.x0) + "," + to_string(g.y0) + ":" + to_string(g.x1) + "," +
         to_string(g.y1) + ":" + std::to_string(g.nx) + "," + std::to_string(g.ny);
}

Rational InvariantValue::fifth_power() const {
  return power(v.r, 5) * power(F3, v.e);
}

bool same_value(const InvariantValue &a, const InvariantValue &b) {
  return a.fifth_power() == b.fifth_power();
}

std::string invariant_name(int index) {
  int k = index % 6 + 1;
  if (index < 6)
    return "I" + std::to_string(k);
  return "xi" + std::to_string(index / 6) + "(I" + std::to_string(k) + ")";
}

InvariantTuple invariant_tuple(const Equation &eq, const Point &p) {
  RSectionJet s = section_jet(eq, p.first, p.second, 5);
  Rational F3 = *f_invariants(s).F3;
  if (F3 == 0)
    throw NonRegularPointError("F3 vanishes at " + point_string(p), p);
  auto L = lie_derivatives(s);
  InvariantTuple t;
  for (int k = 0; k < 6; ++k) {
    t.values[k] = entry(L.I[k], F3);
    t.values[6 + k] = entry(L.xi[0][k], F3);
    t.values[12 + k] = entry(L.xi[1][k], F3);
  }
  return t;
}

std::string to_string(RegularCase c) {
  switch (c) {
  case RegularCase::ConstantInvariants:
    return "ConstantInvariants";
  case RegularCase::OneGenerator:
    return "OneGenerator";
  case RegularCase::TwoIndependent:
    return "TwoIndependent";
  case RegularCase::Indeterminate:
    return "Indeterminate";
  }
  return "?";
}

void check_regular(const Equation &eq, const Point &p, const std::vector<Point> &grid) {
  if (F3_at(eq, p) == 0)
    throw NonRegularPointError("F3 vanishes at the marked point " + point_string(p), p);
  for (const auto &q : grid)
    if (F3_at(eq, q) == 0)
      throw NonRegularPointError("F3 vanishes at grid point " + point_string(q), q);
}

InvariantSignature signature(const Equation &eq, const Point &p, const GridSpec &grid) {
  auto pts = grid.points(p);
  if (pts.empty())
    throw std::invalid_argument("empty grid");
  check_regular(eq, p, pts);
  InvariantSignature s;
  s.point = p;
  s.at_point = invariant_tuple(eq, p);
  const auto &v = s.at_point.values;

  // differentials of I^k in the frame basis: (xi_1(I^k), xi_2(I^k))
  std::array<std::array<Rational, 2>, 6> dI;
  bool all_zero = true;
  for (int k = 0; k < 6; ++k) {
    dI[k] = {v[6 + k].v.r, v[12 + k].v.r};
    all_zero = all_zero && dI[k][0] == 0 && dI[k][1] == 0;
  }
  if (all_zero) {
    for (const auto &q : pts) {
      auto I = first_six(eq, q);
      for (int k = 0; k < 6; ++k)
        if (!same_value(I[k], v[k])) {
          s.kind = RegularCase::Indeterminate;
          s.note = "dI = 0 at the marked point but " + invariant_name(k) +
                   " is not constant on the grid";
          return s;
        }
    }
    s.kind = RegularCase::ConstantInvariants;
    return s;
  }
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      if (pair_independent(dI[a], dI[b])) {
        s.kind = RegularCase::TwoIndependent;
        s.generators = {a, b};
        return s;
      }
  auto g = coordinate_gradients(eq, p);
  for (int a = 0; a < kInvariantCount; ++a)
    for (int b = std::max(a + 1, 6); b < kInvariantCount; ++b)
      if (pair_independent(g[a], g[b])) {
        s.kind = RegularCase::TwoIndependent;
        s.generators = {a, b};
        return s;
      }
  for (int k = 0; k < 6; ++k)
    if (dI[k][0] != 0 || dI[k][1] != 0) {
      s.kind = RegularCase::OneGenerator;
      s.generators = {k};
      return s;
    }
  return s;
}

RegularCase classify_regular_case(const Equation &eq, const Point &p, const GridSpec &grid) {
  return signature(eq, p, grid).kind;
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::NecessaryConditionsPass:
    return "NecessaryConditionsPass";
  case Verdict::Fail:
    return "Fail";
  case Verdict::CaseMismatch:
    return "CaseMismatch";
  case Verdict::Inconclusive:
    return "Inconclusive";
  }
  return "?";
}

int exit_code(Verdict v) {
  switch (v) {
  case Verdict::NecessaryConditionsPass:
    return 0;
  case Verdict::Fail:
    return 1;
  case Verdict::CaseMismatch:
  case Verdict::Inconclusive:
    return 2;
  }
  return 2;
}

namespace {

// Generator values on the grid; only the first six are needed when every
// generator is one of I^1..I^6.
struct GridSample {
  Point q;
  std::vector<InvariantValue> J;
};

std::vector<GridSample> sample_generators(const Equation &eq, const std::vector<Point> &pts,
                                          const std::vector<int> &gens) {
  bool cheap = true;
  for (int g : gens)
    cheap = cheap && g < 6;
  std::vector<GridSample> out;
  for (const auto &q : pts) {
    GridSample s{q, {}};
    if (cheap) {
      auto I = first_six(eq, q);
      for (int g : gens)
        s.J.push_back(I[g]);
    } else {
      auto t = invariant_tuple(eq, q);
      for (int g : gens)
        s.J.push_back(t.values[g]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<int> first_difference(const InvariantTuple &a, const InvariantTuple &b) {
  for (int k = 0; k < kInvariantCount; ++k)
    if (!same_value(a.values[k], b.values[k]))
      return k;
  return std::nullopt;
}

std::string describe(const InvariantValue &v) {
  std::ostringstream os;
  os << to_string(v.v) << " (~" << v.approx() << ")";
  return os.str();
}

} // namespace

EquivalenceReport check_equivalence(const Equation &eq1, const Point &p1, const Equation &eq2,
                                    const Point &p2, const GridSpec &grid) {
  EquivalenceReport rep;
  rep.first = signature(eq1, p1, grid);
  rep.second = signature(eq2, p2, grid);
  const auto &s1 = rep.first, &s2 = rep.second;
  if (s1.kind == RegularCase::Indeterminate || s2.kind == RegularCase::Indeterminate) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = s1.kind == RegularCase::Indeterminate ? s1.note : s2.note;
    return rep;
  }
  if (s1.kind != s2.kind || s1.generators != s2.generators) {
    rep.verdict = Verdict::CaseMismatch;
    rep.reason = "cases differ: " + to_string(s1.kind) + " vs " + to_string(s2.kind);
    return rep;
  }
  if (auto k = first_difference(s1.at_point, s2.at_point)) {
    rep.verdict = Verdict::Fail;
    rep.reason = invariant_name(*k) + " differs at the marked points: " +
                 describe(s1.at_point.values[*k]) + " vs " + describe(s2.at_point.values[*k]);
    return rep;
  }
  if (s1.kind != RegularCase::ConstantInvariants) {
    auto g1 = sample_generators(eq1, grid.points(p1), s1.generators);
    auto g2 = sample_generators(eq2, grid.points(p2), s2.generators);
    std::map<std::size_t, InvariantTuple> t1, t2;
    for (std::size_t a = 0; a < g1.size(); ++a)
      for (std::size_t b = 0; b < g2.size(); ++b) {
        bool equal = true;
        for (std::size_t j = 0; j < s1.generators.size(); ++j)
          equal = equal && same_value(g1[a].J[j], g2[b].J[j]);
        if (!equal || (g1[a].q == p1 && g2[b].q == p2))
          continue;
        if (!t1.count(a))
          t1[a] = invariant_tuple(eq1, g1[a].q);
        if (!t2.count(b))
          t2[b] = invariant_tuple(eq2, g2[b].q);
        GridMatch m{g1[a].q, g2[b].q, true};
        if (auto k = first_difference(t1[a], t2[b])) {
          m.agree = false;
          rep.matches.push_back(m);
          rep.verdict = Verdict::Fail;
          rep.reason = invariant_name(*k) + " is not the same function of the generators: " +
                       point_string(m.p1) + " vs " + point_string(m.p2);
          return rep;
        }
        rep.matches.push_back(m);
      }
    if (rep.matches.empty())
      rep.warnings.push_back("inconclusive-grid: no grid points with exactly equal generator "
                             "values; functional relations checked at the marked points only");
  }
  if (s1.kind == RegularCase::OneGenerator)
    rep.warnings.push_back("the generator condition J(p) = J(p2) is read with p = p1");
  rep.verdict = Verdict::NecessaryConditionsPass;
  rep.reason = "all checked invariants agree";
  return rep;
}

} // namespace odeinv
