#include "odeinv/isotropy.hpp"


#include <algorithm>
#include <mutex>

namespace odeinv {

std::vector<XUnknown> field_unknowns(int min_order, int max_order) {
  std::vector<XUnknown> out;
  for (int i = 1; i <= 2; ++i)
    for (int d = min_order; d <= max_order; ++d)
      for (int a = d; a >= 0; --a)
        out.push_back({i, a, d - a});
  return out;
}

namespace detail {

const std::vector<PsiRow> &psi_rows(int k) {
  static std::array<std::vector<PsiRow>, 4> tables;
  static std::once_flag once;
  if (k < 0 || k > 3)
    throw std::out_of_range("psi rows available for 0 <= k <= 3");
  std::call_once(once, [] {
    for (int kk = 0; kk <= 3; ++kk)
      for (const auto &e : psi_symbolic(kk)) {
        FieldSplit s = split_field_linear(e.poly);
        if (!s.rest.is_zero())
          throw std::logic_error("deformation velocity is not homogeneous in the field jet");
        PsiRow row{e.i, e.m, e.n, {}};
        for (auto &[v, c] : s.coeff)
          row.coeffs.emplace_back(XUnknown{v.index(), v.m(), v.n()}, std::move(c));
        tables[kk].push_back(std::move(row));
      }
  });
  return tables[k];
}

} // namespace detail

// ---------------------------------------------------------------------------

LinearSubspace::LinearSubspace(std::vector<XUnknown> ambient, const Matrix<Rational> &spanning)
    : ambient_(std::move(ambient)) {
  for (const auto &v : spanning)
    if (v.size() != ambient_.size())
      throw std::invalid_argument("spanning vector has the wrong length");
  basis_ = reduced_echelon(spanning, ambient_.size()).rows;
}

std::optional<std::size_t> LinearSubspace::column(const XUnknown &u) const {
  auto it = std::find(ambient_.begin(), ambient_.end(), u);
  if (it == ambient_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - ambient_.begin());
}

bool LinearSubspace::contains(const Vector<Rational> &v) const {
  Matrix<Rational> m = basis_;
  m.push_back(v);
  return matrix_rank(m, ambient_.size()) == basis_.size();
}

Matrix<Rational> LinearSubspace::annihilator() const {
  return null_space(basis_, ambient_.size());
}

LinearSubspace isotropy_algebra(const RSectionJet &theta, int k) {
  if (k < 0 || k > 3)
    throw std::out_of_range("isotropy algebras are available for 0 <= k <= 3");
  if (theta.order() < k)
    throw std::invalid_argument("isotropy_algebra needs a section jet of order k");
  auto cols = field_unknowns(1, k + 2);
  return LinearSubspace(cols, null_space(psi_system(theta.truncated(k), k, cols), cols.size()));
}

LinearSubspace a_space(const RSectionJet &theta, int k) {
  if (k < 0 || k > 3)
    throw std::out_of_range("a_space is available for 0 <= k <= 3");
  return LinearSubspace(field_unknowns(0, k + 2), a_space_basis(theta, k));
}

LinearSubspace graded_piece(const LinearSubspace &sub, int r) {
  const auto &amb = sub.ambient();
  std::vector<std::size_t> lower, level;
  std::vector<XUnknown> level_unknowns;
  for (std::size_t c = 0; c < amb.size(); ++c) {
    if (amb[c].order() < r)
      lower.push_back(c);
    else if (amb[c].order() == r) {
      level.push_back(c);
      level_unknowns.push_back(amb[c]);
    }
  }
  const auto &B = sub.basis();
  // combinations c of basis rows with (c B)[lower] = 0
  Matrix<Rational> sys(lower.size(), Vector<Rational>(B.size()));
  for (std::size_t l = 0; l < lower.size(); ++l)
    for (std::size_t b = 0; b < B.size(); ++b)
      sys[l][b] = B[b][lower[l]];
  Matrix<Rational> combos = null_space(sys, B.size());
  Matrix<Rational> span;
  for (const auto &c : combos) {
    Vector<Rational> v(level.size());
    for (std::size_t b = 0; b < B.size(); ++b)
      if (sgn(c[b]) != 0)
        for (std::size_t l = 0; l < level.size(); ++l)
          v[l] += c[b] * B[b][level[l]];
    span.push_back(std::move(v));
  }
  return LinearSubspace(level_unknowns, span);
}

LinearSubspace project_to_order(const LinearSubspace &sub, int r) {
  std::vector<XUnknown> amb;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < sub.ambient().size(); ++c)
    if (sub.ambient()[c].order() <= r) {
      amb.push_back(sub.ambient()[c]);
      keep.push_back(c);
    }
  Matrix<Rational> span;
  for (const auto &b : sub.basis()) {
    Vector<Rational> v;
    for (auto c : keep)
      v.push_back(b[c]);
    span.push_back(std::move(v));
  }
  return LinearSubspace(amb, span);
}

LinearSubspace symbol_space(int k) {
  auto amb = symbol_unknowns(k);
  Matrix<Rational> id(amb.size(), Vector<Rational>(amb.size()));
  for (std::size_t i = 0; i < amb.size(); ++i)
    id[i][i] = 1;
  return LinearSubspace(amb, id);
}

namespace {

// Position of X^i_(a,b) inside symbol_unknowns(a+b).
std::size_t symbol_pos(int i, int a, int b) {
  int k = a + b;
  return static_cast<std::size_t>((i - 1) * (k + 1) + (k - a));
}

// d_j on raw partial symbols: S_k -> S_{k-1}.
Vector<Rational> symbol_derivative(const Vector<Rational> &xi, int k, int j) {
  Vector<Rational> out(static_cast<std::size_t>(2 * k));
  for (int i = 1; i <= 2; ++i)
    for (int a = k - 1; a >= 0; --a) {
      int b = k - 1 - a;
      out[symbol_pos(i, a, b)] = xi[symbol_pos(i, a + (j == 1), b + (j == 2))];
    }
  return out;
}

void check_symbol_ambient(const LinearSubspace &g, int &k) {
  if (g.ambient().empty())
    throw std::invalid_argument("empty symbol ambient");
  k = g.ambient().front().order();
  if (g.ambient() != symbol_unknowns(k))
    throw std::invalid_argument("subspace is not presented inside a full symbol space");
}

} // namespace

LinearSubspace prolong_subspace(const LinearSubspace &g) {
  int k = 0;
  check_symbol_ambient(g, k);
  Matrix<Rational> eqs = g.annihilator();
  auto amb = symbol_unknowns(k + 1);
  std::size_t n = amb.size();
  Matrix<Rational> sys;
  for (int j = 1; j <= 2; ++j) {
    // columns: unit vectors of S_{k+1}, mapped by d_j
    Matrix<Rational> dj(n);
    for (std::size_t c = 0; c < n; ++c) {
      Vector<Rational> e(n);
      e[c] = 1;
      dj[c] = symbol_derivative(e, k + 1, j);
    }
    for (const auto &row : eqs) {
      Vector<Rational> r(n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t t = 0; t < row.size(); ++t)
          r[c] += row[t] * dj[c][t];
      sys.push_back(std::move(r));
    }
  }
  return LinearSubspace(amb, null_space(sys, n));
}

SymbolForm spencer_operator(const SymbolForm &xi) {
  int k = xi.order;
  if (k < 1)
    throw std::invalid_argument("Spencer operator needs symbol order >= 1");
  SymbolForm out{k - 1, xi.degree + 1, {}};
  if (xi.degree == 0) {
    if (xi.comps.size() != 1)
      throw std::invalid_argument("0-form needs one component");
    out.comps = {symbol_derivative(xi.comps[0], k, 1), symbol_derivative(xi.comps[0], k, 2)};
  } else if (xi.degree == 1) {
    if (xi.comps.size() != 2)
      throw std::invalid_argument("1-form needs two components");
    Vector<Rational> a = symbol_derivative(xi.comps[1], k, 1);
    Vector<Rational> b = symbol_derivative(xi.comps[0], k, 2);
    for (std::size_t t = 0; t < a.size(); ++t)
      a[t] -= b[t];
    out.comps = {a};
  } else if (xi.degree == 2) {
    out.comps = {};
  } else {
    throw std::invalid_argument("form degree must be 0, 1 or 2");
  }
  return out;
}

std::vector<SymbolForm> form_basis(const LinearSubspace &s, int l) {
  int k = 0;
  check_symbol_ambient(s, k);
  std::vector<SymbolForm> out;
  std::size_t n = s.ambient_dim();
  int slots = l == 1 ? 2 : 1;
  for (int slot = 0; slot < slots; ++slot)
    for (const auto &b : s.basis()) {
      SymbolForm f{k, l, std::vector<Vector<Rational>>(slots, Vector<Rational>(n))};
      f.comps[slot] = b;
      out.push_back(std::move(f));
    }
  return out;
}

Matrix<Rational> spencer_matrix(int k, int l, const std::vector<SymbolForm> &domain) {
  std::size_t rows = static_cast<std::size_t>(2 * k) * (l == 0 ? 2 : 1);
  Matrix<Rational> m(rows, Vector<Rational>(domain.size()));
  for (std::size_t c = 0; c < domain.size(); ++c) {
    if (domain[c].order != k || domain[c].degree != l)
      throw std::invalid_argument("domain element has the wrong level");
    SymbolForm img = spencer_operator(domain[c]);
    std::size_t r = 0;
    for (const auto &v : img.comps)
      for (const auto &x : v)
        m[r++][c] = x;
  }
  return m;
}

std::string to_string(const OrbitLabel &l) {
  switch (l.kind) {
  case OrbitKind::Orb2_0:
    return "Orb2_0";
  case OrbitKind::Orb2_2:
    return "Orb2_2";
  case OrbitKind::Orb3_0:
    return "Orb3_0";
  case OrbitKind::Orb3_degenerate:
    return "Orb3_degenerate(" + l.reason + ")";
  }
  return "?";
}

OrbitLabel classify_orbit(const RSectionJet &theta) {
  const InvariantPolys &p = invariant_polys();
  if (theta.order() == 2) {
    bool zero = sgn(eval(p.F1, theta)) == 0 && sgn(eval(p.F2, theta)) == 0;
    return {zero ? OrbitKind::Orb2_2 : OrbitKind::Orb2_0, ""};
  }
  if (theta.order() == 3) {
    RSectionJet t2 = theta.truncated(2);
    bool fzero = sgn(eval(p.F1, t2)) == 0 && sgn(eval(p.F2, t2)) == 0;
    if (sgn(eval(p.F3, theta)) != 0)
      return {OrbitKind::Orb3_0, ""};
    return {OrbitKind::Orb3_degenerate, fzero ? "preimage_of_Orb2_2" : "F3_zero_F_nonzero"};
  }
  throw std::invalid_argument("classify_orbit takes a 2-jet or a 3-jet");
}

} // namespace odeinv
