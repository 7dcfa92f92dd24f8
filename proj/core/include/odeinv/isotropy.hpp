#pragma once

#include "odeinv/jetpoly.hpp"
#include "odeinv/linalg.hpp"
#include "odeinv/section_jet.hpp"
#include "odeinv/vfjet.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace odeinv {

// Formal unknown X^i_(a,b) of a vector-field jet.
struct XUnknown {
  int i = 1, a = 0, b = 0;
  int order() const { return a + b; }
  auto operator<=>(const XUnknown &) const = default;
};

// Canonical order: i ascending, then total order ascending, then a descending.
std::vector<XUnknown> field_unknowns(int min_order, int max_order);
// Unknowns of exactly order k (the symbol space S_k).
inline std::vector<XUnknown> symbol_unknowns(int k) { return field_unknowns(k, k); }

class LinearSubspace {
public:
  LinearSubspace() = default;
  // Spanning vectors need not be independent; the basis is reduced to
  // canonical echelon form.
  LinearSubspace(std::vector<XUnknown> ambient, const Matrix<Rational> &spanning);

  const std::vector<XUnknown> &ambient() const { return ambient_; }
  const Matrix<Rational> &basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient_dim() const { return ambient_.size(); }

  std::optional<std::size_t> column(const XUnknown &u) const;
  bool contains(const Vector<Rational> &v) const;
  // Linear equations (rows) whose common kernel is this subspace.
  Matrix<Rational> annihilator() const;

  friend bool operator==(const LinearSubspace &a, const LinearSubspace &b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

private:
  std::vector<XUnknown> ambient_;
  Matrix<Rational> basis_;
};

// Rows (D_sigma psi^i)(theta), |sigma| <= k, restricted to the given columns.
// Unknowns outside `cols` are set to zero.
template <class T>
Matrix<T> psi_system(const SectionJet<T> &theta, int k, const std::vector<XUnknown> &cols);

// Null space basis over T of the A-space system; unknowns field_unknowns(0, k+2).
template <class T> Matrix<T> a_space_basis(const SectionJet<T> &theta, int k);

LinearSubspace isotropy_algebra(const RSectionJet &theta, int k);
LinearSubspace a_space(const RSectionJet &theta, int k);

// Intersect with "all components of order < r vanish", project to order r.
LinearSubspace graded_piece(const LinearSubspace &sub, int r);
LinearSubspace symbol_space(int k);
// First prolongation of a subspace of S_k, as a subspace of S_{k+1}.
LinearSubspace prolong_subspace(const LinearSubspace &g);
// Image of the projection to components of order <= r.
LinearSubspace project_to_order(const LinearSubspace &sub, int r);

// Element of S_k (x) Lambda^l T*: l = 0 one vector, l = 1 values on e1, e2,
// l = 2 the value on (e1, e2). Vectors are indexed by symbol_unknowns(k).
struct SymbolForm {
  int order = 0;
  int degree = 0;
  std::vector<Vector<Rational>> comps;
};

SymbolForm spencer_operator(const SymbolForm &xi);
// Matrix of the Spencer map on the given domain basis (columns).
Matrix<Rational> spencer_matrix(int k, int l, const std::vector<SymbolForm> &domain);
// Domain basis of S (x) Lambda^l T* for a subspace S of S_k.
std::vector<SymbolForm> form_basis(const LinearSubspace &s, int l);

enum class OrbitKind { Orb2_0, Orb2_2, Orb3_0, Orb3_degenerate };
struct OrbitLabel {
  OrbitKind kind;
  std::string reason; // for Orb3_degenerate: F3_zero_F_nonzero | preimage_of_Orb2_2
};
std::string to_string(const OrbitLabel &l);
OrbitLabel classify_orbit(const RSectionJet &theta);

template <class T>
VFieldJet<T> to_field_jet(const Vector<T> &v, const std::vector<XUnknown> &cols, int order);
template <class T>
Vector<T> from_field_jet(const VFieldJet<T> &X, const std::vector<XUnknown> &cols);

// ---------------------------------------------------------------------------
// template definitions

namespace detail {
struct PsiRow {
  int i, m, n;
  std::vector<std::pair<XUnknown, JetPolynomial>> coeffs;
};
const std::vector<PsiRow> &psi_rows(int k);
} // namespace detail

template <class T>
Matrix<T> psi_system(const SectionJet<T> &theta, int k, const std::vector<XUnknown> &cols) {
  std::vector<std::pair<XUnknown, std::size_t>> index;
  index.reserve(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    index.emplace_back(cols[c], c);
  std::sort(index.begin(), index.end());
  auto find = [&](const XUnknown &u) -> std::optional<std::size_t> {
    auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(u, std::size_t(0)),
                               [](const auto &x, const auto &y) { return x.first < y.first; });
    if (it != index.end() && it->first == u)
      return it->second;
    return std::nullopt;
  };
  const auto &rows = detail::psi_rows(k);
  Matrix<T> m(rows.size(), Vector<T>(cols.size(), scalar_from<T>(Rational(0))));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto &[u, poly] : rows[r].coeffs)
      if (auto c = find(u))
        m[r][*c] = eval(poly, theta);
  return m;
}

template <class T> Matrix<T> a_space_basis(const SectionJet<T> &theta, int k) {
  if (theta.order() < k + 1)
    throw std::invalid_argument("a_space needs a section jet of order k+1");
  auto cols = field_unknowns(0, k + 2);
  return null_space(psi_system(theta.truncated(k + 1), k, cols), cols.size());
}

template <class T>
VFieldJet<T> to_field_jet(const Vector<T> &v, const std::vector<XUnknown> &cols, int order) {
  VFieldJet<T> X(order);
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (cols[c].order() <= order)
      X.comp(cols[c].i, cols[c].a, cols[c].b) = v[c];
  return X;
}

template <class T>
Vector<T> from_field_jet(const VFieldJet<T> &X, const std::vector<XUnknown> &cols) {
  Vector<T> v(cols.size(), scalar_from<T>(Rational(0)));
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (cols[c].order() <= X.order())
      v[c] = X.comp(cols[c].i, cols[c].a, cols[c].b);
  return v;
}

} // namespace odeinv
