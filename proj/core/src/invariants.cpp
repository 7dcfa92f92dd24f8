#include "odeinv/invariants.hpp"

#include <cmath>

namespace odeinv {

FValues f_invariants(const RSectionJet &theta) {
  if (theta.order() < 2)
    throw std::invalid_argument("F1 and F2 need a jet of order >= 2");
  const auto &p = invariant_polys();
  FValues v{eval(p.F1, theta), eval(p.F2, theta), std::nullopt};
  if (theta.order() >= 3)
    v.F3 = eval(p.F3, theta);
  return v;
}

std::string to_string(const ScaledRational &v) {
  return to_string(v.r) + " t^" + std::to_string(v.e);
}

double approximate(const ScaledRational &v, const Rational &F3) {
  double f = to_double(F3);
  double t = f < 0 ? -std::pow(-f, 0.2) : std::pow(f, 0.2);
  return to_double(v.r) * std::pow(t, v.e);
}

namespace {

TensorComp combine_g2(const Rational &c1, const Rational &c2, int w) {
  TensorComp e1 = g2_generator(1), e2 = g2_generator(2);
  TensorComp out(1, 2, w);
  for (int i = 1; i <= 2; ++i)
    for (int a = 0; a <= 2; ++a)
      out.set(i, a, c1 * e1.get(i, a) + c2 * e2.get(i, a));
  return out;
}

std::size_t column_of(const std::vector<XUnknown> &cols, const XUnknown &u) {
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (cols[c] == u)
      return c;
  throw std::logic_error("unknown not in the ambient space");
}

// Linear conditions on the coefficients of two lifts L_1, L_2 written in an
// A-space basis; unknown (r, a) sits at r * nb + a.
struct LiftSystem {
  const Matrix<Rational> &basis;
  const std::vector<XUnknown> &cols;
  Matrix<Rational> rows;
  Vector<Rational> rhs;

  std::size_t n() const { return 2 * basis.size(); }
  // adds sum over terms of coef * (component u of L_r) = value
  void add(const std::vector<std::tuple<int, XUnknown, Rational>> &terms, const Rational &value) {
    Vector<Rational> row(n());
    for (const auto &[r, u, coef] : terms) {
      std::size_t c = column_of(cols, u);
      for (std::size_t a = 0; a < basis.size(); ++a)
        row[(r - 1) * basis.size() + a] += coef * basis[a][c];
    }
    rows.push_back(std::move(row));
    rhs.push_back(value);
  }
  RFieldJet lift(const Vector<Rational> &coef, int r, int order) const {
    Vector<Rational> v(cols.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const Rational &k = coef[(r - 1) * basis.size() + a];
      if (k == 0)
        continue;
      for (std::size_t c = 0; c < cols.size(); ++c)
        v[c] += k * basis[a][c];
    }
    return to_field_jet(v, cols, order);
  }
};

// Particular solution and null-space basis of rows x = rhs.
std::pair<Vector<Rational>, Matrix<Rational>> affine_solution(const Matrix<Rational> &rows,
                                                               const Vector<Rational> &rhs,
                                                               std::size_t n) {
  Matrix<Rational> aug = rows;
  for (std::size_t i = 0; i < aug.size(); ++i)
    aug[i].push_back(rhs[i]);
  Echelon<Rational> e = reduced_echelon(std::move(aug), n + 1);
  if (!e.pivots.empty() && e.pivots.back() == n)
    throw SingularSystemError("inconsistent horizontal subspace conditions");
  Vector<Rational> x(n);
  for (std::size_t r = 0; r < e.rank(); ++r)
    x[e.pivots[r]] = e.rows[r][n];
  return {x, null_space(rows, n)};
}

void require_vanishing(const RFieldJet &X, int up_to, const char *what) {
  if (!X.in_filtration(up_to))
    throw std::logic_error(std::string("construction invariant violated: ") + what);
}

} // namespace

TensorComp omega2(const RSectionJet &theta) {
  FValues f = f_invariants(theta);
  return combine_g2(f.F1, f.F2, 1);
}

// The raw bracket of two horizontal lifts is (F1 e1 + F2 e2) / 3; this factor
// puts the constructions on the normalization of the closed forms.
const Rational kBracketScale(3);

Omega2Construction omega2_construction(const RSectionJet &theta) {
  if (theta.order() < 2)
    throw std::invalid_argument("omega2 needs a jet of order >= 2");
  RSectionJet th = theta.truncated(2);
  auto cols = field_unknowns(0, 3);
  Matrix<Rational> basis = a_space_basis(th, 1);
  LiftSystem sys{basis, cols, {}, {}};
  for (int r = 1; r <= 2; ++r)
    for (int i = 1; i <= 2; ++i) {
      sys.add({{r, XUnknown{i, 0, 0}, 1}}, i == r ? 1 : 0);
      sys.add({{r, XUnknown{i, 1, 0}, 1}}, 0);
      sys.add({{r, XUnknown{i, 0, 1}, 1}}, 0);
    }
  // h^i_{j1,2} = h^i_{j2,1}
  for (int i = 1; i <= 2; ++i) {
    sys.add({{2, XUnknown{i, 2, 0}, 1}, {1, XUnknown{i, 1, 1}, -1}}, 0);
    sys.add({{2, XUnknown{i, 1, 1}, 1}, {1, XUnknown{i, 0, 2}, -1}}, 0);
  }
  Vector<Rational> c = solve_unique(sys.rows, sys.rhs, sys.n());
  Omega2Construction out;
  out.H.order = 3;
  out.H.lift = {sys.lift(c, 1, 3), sys.lift(c, 2, 3)};
  RFieldJet G = kBracketScale * bracket(out.H.lift[0], out.H.lift[1]);
  require_vanishing(G, 1, "bracket of the omega2 lifts has low-order terms");
  out.omega = TensorComp(1, 2, 1);
  for (int i = 1; i <= 2; ++i)
    for (int a = 0; a <= 2; ++a)
      out.omega.set(i, a, G.comp(i, a, 2 - a));
  return out;
}

Derived2 derived2(const RSectionJet &theta) {
  FValues f = f_invariants(theta);
  Derived2 d{TensorComp(0, 1, 1), TensorComp(1, 0, 2)};
  d.alpha.set(0, 1, f.F1);
  d.alpha.set(0, 0, f.F2);
  d.beta.set(1, 0, f.F2);
  d.beta.set(2, 0, -f.F1);
  return d;
}

TensorComp omega3(const RSectionJet &theta) {
  if (theta.order() < 3)
    throw std::invalid_argument("omega3 needs a jet of order >= 3");
  FValues f = f_invariants(theta);
  if (f.F1 == 0 && f.F2 == 0)
    throw DegenerateJetError("omega3 is undefined over the linearizable orbit (F1 = F2 = 0)");
  const auto &p = invariant_polys();
  return combine_g2(eval(p.Psi1, theta), eval(p.Psi2, theta), 3);
}

Omega3Construction omega3_construction(const RSectionJet &theta, const Rational &h11_1,
                                       const Rational &h11_2, const std::array<Rational, 2> &X,
                                       const std::array<Rational, 2> &Y) {
  if (theta.order() < 3)
    throw std::invalid_argument("omega3 needs a jet of order >= 3");
  RSectionJet th = theta.truncated(3);
  FValues f = f_invariants(th);
  if (f.F1 == 0 && f.F2 == 0)
    throw DegenerateJetError("omega3 is undefined over the linearizable orbit (F1 = F2 = 0)");
  Rational lambda = X[0] * Y[1] - X[1] * Y[0];
  if (lambda == 0)
    throw std::invalid_argument("X and Y must be independent");

  auto cols = field_unknowns(0, 4);
  Matrix<Rational> basis = a_space_basis(th, 2);
  LiftSystem sys{basis, cols, {}, {}};
  for (int r = 1; r <= 2; ++r)
    for (int i = 1; i <= 2; ++i)
      sys.add({{r, XUnknown{i, 0, 0}, 1}}, i == r ? 1 : 0);
  // h^i_{1,2} = h^i_{2,1}
  for (int i = 1; i <= 2; ++i)
    sys.add({{2, XUnknown{i, 1, 0}, 1}, {1, XUnknown{i, 0, 1}, -1}}, 0);
  if (f.F1 != 0) {
    sys.add({{1, XUnknown{1, 1, 0}, 1}}, h11_1);
    sys.add({{1, XUnknown{2, 1, 0}, 1}}, h11_2);
  } else {
    // mirrored chart: h^2_{2,2}, h^1_{2,2}
    sys.add({{2, XUnknown{2, 0, 1}, 1}}, h11_1);
    sys.add({{2, XUnknown{1, 0, 1}, 1}}, h11_2);
  }
  auto [c0, free] = affine_solution(sys.rows, sys.rhs, sys.n());

  // bracket conditions: order-one part of [L1, L2] vanishes; affine in the free part
  auto low = [&](const Vector<Rational> &c) {
    RFieldJet G = bracket(sys.lift(c, 1, 4), sys.lift(c, 2, 4));
    require_vanishing(G, 0, "symmetric first-order lifts must bracket to zero at order 0");
    return std::array<Rational, 4>{G.comp(1, 1, 0), G.comp(1, 0, 1), G.comp(2, 1, 0),
                                   G.comp(2, 0, 1)};
  };
  auto b0 = low(c0);
  Matrix<Rational> M(4, Vector<Rational>(free.size()));
  for (std::size_t a = 0; a < free.size(); ++a) {
    Vector<Rational> ca = c0;
    for (std::size_t q = 0; q < ca.size(); ++q)
      ca[q] += free[a][q];
    auto ba = low(ca);
    for (int e = 0; e < 4; ++e)
      M[e][a] = ba[e] - b0[e];
  }
  Vector<Rational> rhs(4);
  for (int e = 0; e < 4; ++e)
    rhs[e] = -b0[e];
  Vector<Rational> z = solve_unique(M, rhs, free.size());
  Vector<Rational> c = c0;
  for (std::size_t a = 0; a < free.size(); ++a)
    for (std::size_t q = 0; q < c.size(); ++q)
      c[q] += z[a] * free[a][q];

  Omega3Construction out;
  out.H.order = 4;
  out.H.lift = {sys.lift(c, 1, 4), sys.lift(c, 2, 4)};
  const RFieldJet &L1 = out.H.lift[0], &L2 = out.H.lift[1];
  RFieldJet LX = X[0] * L1 + X[1] * L2, LY = Y[0] * L1 + Y[1] * L2;
  RFieldJet G = (kBracketScale / lambda) * bracket(LX, LY);
  require_vanishing(G, 1, "HS3 bracket has low-order terms");

  for (int k = 1; k <= 2; ++k) {
    RFieldJet w = bracket(out.H.lift[k - 1].truncated(3), G);
    for (int m = 1; m <= 2; ++m) {
      RFieldJet v = bracket(out.H.lift[m - 1].truncated(2), w);
      RFieldJet tt = v - (v.comp(1, 0, 0) * L1.truncated(1) + v.comp(2, 0, 0) * L2.truncated(1));
      for (int i = 1; i <= 2; ++i) {
        out.t[i - 1][0][m - 1][k - 1] = tt.comp(i, 1, 0);
        out.t[i - 1][1][m - 1][k - 1] = tt.comp(i, 0, 1);
      }
    }
  }
  const auto &t = out.t;
  out.t_symmetric = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int k = 0; k < 2; ++k)
          if (t[i][j][m][k] != t[i][m][j][k] || t[i][j][m][k] != t[i][j][k][m])
            out.t_symmetric = false;

  // mu~(t)^i_{jk,l} = (delta^i_j t^r_{krl} + delta^i_k t^r_{jrl}) / 3, contracted with beta^l
  std::array<Rational, 2> beta{f.F2, -f.F1};
  auto trace = [&](int a, int l) { return t[0][a][0][l] + t[1][a][1][l]; };
  out.omega = TensorComp(1, 2, 3);
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a <= 2; ++a) {
      // lower indices: a ones then twos
      int j = a >= 1 ? 0 : 1, k = a >= 2 ? 0 : 1;
      Rational acc = 0;
      for (int l = 0; l < 2; ++l) {
        Rational mu = 0;
        if (i == j)
          mu += trace(k, l);
        if (i == k)
          mu += trace(j, l);
        acc += beta[l] * mu / 3;
      }
      out.omega.set(i + 1, a, 3 * acc);
    }
  return out;
}

Derived3 derived3(const RSectionJet &theta) {
  if (theta.order() < 3)
    throw std::invalid_argument("derived invariants of order 3 need a jet of order >= 3");
  const auto &p = invariant_polys();
  Rational P1 = eval(p.Psi1, theta), P2 = eval(p.Psi2, theta), F3 = eval(p.F3, theta);
  Derived3 d{TensorComp(0, 1, 3), TensorComp(1, 0, 4), TensorComp(0, 0, 5)};
  d.alpha.set(0, 1, P1);
  d.alpha.set(0, 0, P2);
  d.beta.set(1, 0, P2);
  d.beta.set(2, 0, -P1);
  d.nu.set(0, 0, F3);
  return d;
}

LieDerivatives<Rational> lie_derivatives(const Equation &eq, const Rational &x0,
                                         const Rational &y0) {
  return lie_derivatives(section_jet(eq, x0, y0, 5));
}

Matrix<Rational> invariant_gradients(const RSectionJet &theta4) {
  RSectionJet th = theta4.truncated(4);
  Matrix<Rational> g(6);
  for (int i = 1; i <= 4; ++i)
    for (int d = 0; d <= 4; ++d)
      for (int n = 0; n <= d; ++n) {
        auto I = scalar_invariants(direction_lift(th, i, d - n, n));
        for (int k = 0; k < 6; ++k)
          g[k].push_back(I[k].r.d[0]);
      }
  return g;
}

Matrix<Rational> extended_invariant_gradients(const RSectionJet &theta5) {
  RSectionJet th = theta5.truncated(5);
  Matrix<Rational> g(14);
  for (int i = 1; i <= 4; ++i)
    for (int d = 0; d <= 5; ++d)
      for (int n = 0; n <= d; ++n) {
        auto L = lie_derivatives(direction_lift(th, i, d - n, n));
        for (int k = 0; k < 6; ++k) {
          g[k].push_back(L.I[k].r.d[0]);
          g[6 + k].push_back(L.xi[0][k].r.d[0]);
        }
        g[12].push_back(L.xi[1][4].r.d[0]);
        g[13].push_back(L.xi[1][5].r.d[0]);
      }
  return g;
}

} // namespace odeinv
