#pragma once

#include <optional>
#include <vector>

#include "jk/rational.hpp"

namespace jk {

/// A covector: row of coefficients over the ambient (or current) coordinates.
using Covector = std::vector<Rational>;
using Matrix = std::vector<Covector>;

inline bool is_zero(const Covector& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

inline Covector zero_covector(size_t n) { return Covector(n, Rational(0)); }

inline Covector add(const Covector& a, const Covector& b) {
  Covector r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Covector sub(const Covector& a, const Covector& b) {
  Covector r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Covector scale(const Rational& c, const Covector& a) {
  Covector r(a);
  for (auto& x : r) x *= c;
  return r;
}

inline int first_nonzero_index(const Covector& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return static_cast<int>(i);
  return -1;
}

/// Row times matrix: (a · M)_j = sum_i a_i M[i][j].
inline Covector row_times_matrix(const Covector& a, const Matrix& m) {
  Covector r = zero_covector(m.empty() ? 0 : m[0].size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < r.size(); ++j) r[j] += a[i] * m[i][j];
  }
  return r;
}

inline Matrix matrix_product(const Matrix& a, const Matrix& b) {
  Matrix r;
  r.reserve(a.size());
  for (const auto& row : a) r.push_back(row_times_matrix(row, b));
  return r;
}

inline Matrix identity_matrix(size_t n) {
  Matrix m(n, zero_covector(n));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Determinant by fraction-free-ish Gaussian elimination (exact rationals).
inline Rational det(Matrix m) {
  size_t n = m.size();
  Rational d = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      d = -d;
    }
    d *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return d;
}

/// Reduced row-echelon form; returns pivot column indices.
inline std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);  // drop zero rows: canonical span form
  return pivots;
}

inline int rank(Matrix m) {
  return static_cast<int>(rref(m).size());
}

/// Solves x · M = b for a row vector x (M square). Returns nullopt if singular.
inline std::optional<Covector> solve_row(const Matrix& m, const Covector& b) {
  size_t n = m.size();
  // Transpose into column form: M^T x^T = b^T, solve by elimination.
  Matrix aug(n, zero_covector(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[j][i];
    aug[i][n] = b[i];
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(aug[piv], aug[col]);
    Rational inv = 1 / aug[col][col];
    for (size_t j = col; j <= n; ++j) aug[col][j] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      Rational f = aug[r][col];
      for (size_t j = col; j <= n; ++j) aug[r][j] -= f * aug[col][j];
    }
  }
  Covector x(n);
  for (size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  size_t n = m.size();
  Matrix aug(n, zero_covector(2 * n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(aug[piv], aug[col]);
    Rational inv = 1 / aug[col][col];
    for (size_t j = 0; j < 2 * n; ++j) aug[col][j] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      Rational f = aug[r][col];
      for (size_t j = 0; j < 2 * n; ++j) aug[r][j] -= f * aug[col][j];
    }
  }
  Matrix out(n, zero_covector(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

/// Is v in the row span of m?
inline bool in_span(const Matrix& m, const Covector& v) {
  Matrix a = m;
  int r0 = rank(a);
  a = m;
  a.push_back(v);
  return rank(a) == r0;
}

}  // namespace jk
