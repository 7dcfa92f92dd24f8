#pragma once

#include "odeinv/scalar.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace odeinv {

template <class T> using Vector = std::vector<T>;
template <class T> using Matrix = std::vector<std::vector<T>>;

// A column lost its pivot at the base value but not in the infinitesimal part.
struct PivotStructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T> struct Echelon {
  Matrix<T> rows; // nonzero rows only, reduced
  std::vector<std::size_t> pivots;
  std::size_t ncols = 0;
  std::size_t rank() const { return pivots.size(); }
};

template <class T> Echelon<T> reduced_echelon(Matrix<T> m, std::size_t ncols) {
  std::size_t r = 0;
  Echelon<T> out;
  out.ncols = ncols;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = m.size();
    bool nonzero = false;
    for (std::size_t i = r; i < m.size(); ++i) {
      if (is_unit(m[i][c])) {
        p = i;
        break;
      }
      if (!is_zero(m[i][c]))
        nonzero = true;
    }
    if (p == m.size()) {
      if (nonzero)
        throw PivotStructureError("pivot structure changes near the base point (column " +
                                  std::to_string(c) + ")");
      continue;
    }
    std::swap(m[r], m[p]);
    T inv = T(Rational(1)) / m[r][c];
    for (std::size_t j = c; j < ncols; ++j)
      if (!is_zero(m[r][j]))
        m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || is_zero(m[i][c]))
        continue;
      T f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!is_zero(m[r][j]))
          m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      if (!is_zero(m[i][j]))
        throw PivotStructureError("residual row after elimination");
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

// Basis of {v : m v = 0}; one vector per free column, free entry = 1.
template <class T> Matrix<T> null_space(const Matrix<T> &m, std::size_t ncols) {
  Echelon<T> e = reduced_echelon(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots)
    is_pivot[c] = true;
  Matrix<T> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f])
      continue;
    Vector<T> v(ncols, T(Rational(0)));
    v[f] = T(Rational(1));
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T> std::size_t matrix_rank(const Matrix<T> &m, std::size_t ncols) {
  return reduced_echelon(m, ncols).rank();
}

// Unique solution of A x = b; throws SingularSystemError otherwise.
template <class T> Vector<T> solve_unique(const Matrix<T> &a, const Vector<T> &b, std::size_t n) {
  Matrix<T> aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i)
    aug[i].push_back(b[i]);
  Echelon<T> e = reduced_echelon(std::move(aug), n + 1);
  if (!e.pivots.empty() && e.pivots.back() == n)
    throw SingularSystemError("inconsistent linear system");
  if (e.rank() != n)
    throw SingularSystemError("linear system has no unique solution");
  Vector<T> x(n);
  for (std::size_t r = 0; r < n; ++r)
    x[e.pivots[r]] = e.rows[r][n];
  return x;
}

} // namespace odeinv
