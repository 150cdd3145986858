#include "jk/ratline.hpp"

#include <atomic>

#include "jk/errors.hpp"
#include "jk/parallel.hpp"
#include "jk/rng.hpp"

namespace jk {

namespace {
std::atomic<int> g_threads{1};
std::atomic<uint64_t> g_seed{20260815ULL};
}  // namespace

int thread_count() { return g_threads.load(); }
void set_thread_count(int n) { g_threads.store(n < 1 ? 1 : n); }
uint64_t global_seed() { return g_seed.load(); }
void set_global_seed(uint64_t seed) { g_seed.store(seed); }

Covector to_basis_coords(const Covector& alpha, const OrderedBasis& basis) {
  if (alpha.size() != basis.dim())
    throw jk_error(errc::dimension_mismatch, "covector size vs basis dim");
  auto a = solve_row(basis.vectors, alpha);
  if (!a) throw jk_error(errc::singular_basis, "basis rows are dependent");
  return *a;
}

std::pair<Covector, int> polarize(const Covector& alpha, const OrderedBasis& basis) {
  if (is_zero(alpha)) throw jk_error(errc::zero_vector, "cannot polarize zero");
  Covector a = to_basis_coords(alpha, basis);
  int idx = first_nonzero_index(a);
  int s = sign(a[idx]) > 0 ? 1 : -1;
  return {s > 0 ? alpha : scale(-1, alpha), s};
}

Covector project_along(const Covector& alpha, const Matrix& betas, const OrderedBasis& basis,
                       size_t k) {
  if (betas.size() != k)
    throw jk_error(errc::dimension_mismatch, "need exactly k projection directions");
  size_t d = basis.dim();
  Covector a = to_basis_coords(alpha, basis);
  // Solve a[0..k) = sum c_i * beta_i[0..k) on the leading block, then the
  // tail a - sum c_i beta_i lives on coordinates k..d by construction.
  Matrix block(k, zero_covector(k));
  std::vector<Covector> bcoords;
  bcoords.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    bcoords.push_back(to_basis_coords(betas[i], basis));
    for (size_t j = 0; j < k; ++j) block[i][j] = bcoords[i][j];
  }
  Covector lead(a.begin(), a.begin() + k);
  auto c = solve_row(block, lead);
  if (!c) throw jk_error(errc::degenerate_projection, "projection directions degenerate");
  Covector tail = a;
  for (size_t i = 0; i < k; ++i)
    if ((*c)[i] != 0) tail = sub(tail, scale((*c)[i], bcoords[i]));
  return row_times_matrix(tail, basis.vectors);
}

namespace {

// Exact two-phase simplex (Bland's rule) for A x = b, x >= 0.
// maximize c . x ; returns {feasible, unbounded, optimum}.
struct lp_outcome {
  bool feasible = false;
  bool unbounded = false;
  Rational value = 0;
};

lp_outcome simplex(Matrix A, Covector b, Covector c) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  for (size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& v : A[i]) v = -v;
    }
  }
  // Tableau with artificial variables n..n+m-1.
  size_t total = n + m;
  Matrix t(m, zero_covector(total + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = 1;
    t[i][total] = b[i];
  }
  std::vector<size_t> base(m);
  for (size_t i = 0; i < m; ++i) base[i] = n + i;

  auto pivot = [&](size_t row, size_t col) {
    Rational inv = 1 / t[row][col];
    for (auto& v : t[row]) v *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rational f = t[i][col];
      for (size_t j = 0; j <= total; ++j) t[i][j] -= f * t[row][j];
    }
    base[row] = col;
  };

  // Runs simplex iterations for the reduced costs of objective obj
  // (maximization) over allowed columns; Bland's rule for both choices.
  auto run = [&](const Covector& obj, size_t allowed_cols) -> lp_outcome {
    for (;;) {
      // reduced cost of column j: obj_j - sum_i obj_{base_i} * t[i][j]
      Covector dual(m);
      for (size_t i = 0; i < m; ++i) dual[i] = base[i] < obj.size() ? obj[base[i]] : Rational(0);
      size_t enter = allowed_cols;
      for (size_t j = 0; j < allowed_cols; ++j) {
        Rational rc = j < obj.size() ? obj[j] : Rational(0);
        for (size_t i = 0; i < m; ++i)
          if (t[i][j] != 0) rc -= dual[i] * t[i][j];
        if (rc > 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) {
        Rational v = 0;
        for (size_t i = 0; i < m; ++i)
          if (base[i] < obj.size()) v += obj[base[i]] * t[i][total];
        return {true, false, v};
      }
      size_t leave = m;
      Rational best = 0;
      for (size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][total] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && base[i] < base[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return {true, true, 0};
      pivot(leave, enter);
    }
  };

  // Phase 1: maximize -(sum of artificials).
  Covector phase1(total, Rational(0));
  for (size_t j = n; j < total; ++j) phase1[j] = -1;
  lp_outcome p1 = run(phase1, total);
  if (p1.value != 0) return {false, false, 0};
  // Drive leftover artificials out of the base where possible.
  for (size_t i = 0; i < m; ++i) {
    if (base[i] < n) continue;
    size_t j = 0;
    while (j < n && t[i][j] == 0) ++j;
    if (j < n) pivot(i, j);
    // else the row is redundant; harmless to leave (rhs is zero).
  }
  return run(c, n);
}

}  // namespace

bool cone_contains(const Matrix& generators, const Covector& point) {
  if (generators.empty()) return is_zero(point);
  size_t d = point.size();
  size_t n = generators.size();
  Matrix A(d, zero_covector(n));
  for (size_t j = 0; j < n; ++j) {
    if (generators[j].size() != d)
      throw jk_error(errc::dimension_mismatch, "cone generator size");
    for (size_t i = 0; i < d; ++i) A[i][j] = generators[j][i];
  }
  Covector b = point;
  lp_outcome r = simplex(A, b, Covector(n, Rational(0)));
  return r.feasible;
}

bool cone_contains_interior(const Matrix& generators, const Covector& point) {
  if (generators.empty()) return false;
  size_t d = point.size();
  size_t n = generators.size();
  // point = sum mu_i g_i + theta * sum g_i, mu >= 0, maximize theta.
  Matrix A(d, zero_covector(n + 1));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < d; ++i) A[i][j] = generators[j][i];
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < n; ++j) A[i][n] += generators[j][i];
  Covector c(n + 1, Rational(0));
  c[n] = 1;
  lp_outcome r = simplex(A, point, c);
  if (!r.feasible) return false;
  return r.unbounded || r.value > 0;
}

Rational gram_factor(const OrderedBasis& basis) {
  Matrix a = basis.vectors;
  if (basis.frame) {
    auto finv = inverse(*basis.frame);
    if (!finv) throw jk_error(errc::singular_basis, "declared frame is singular");
    a = matrix_product(basis.vectors, *finv);
  }
  Rational d = det(a);
  if (d == 0) throw jk_error(errc::singular_basis, "basis rows are dependent");
  return 1 / abs(d);
}

}  // namespace jk
