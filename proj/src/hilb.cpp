#include "jk/hilb.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <utility>

#include "jk/errors.hpp"
#include "jk/linalg.hpp"

namespace jk {

namespace {

void require_valid_n(int n, int N) {
  if (n < 0) throw jk_error(errc::invalid_n, "point count must be nonnegative");
  if (N <= n) throw jk_error(errc::invalid_n, "framing rank must exceed the point count");
}

void gen_partitions(int rem, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (rem == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(rem, max_part); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(rem - k, k, cur, out);
    cur.pop_back();
  }
}

// Canonical labeling of a partition shape: labels follow the content order
// (row-major from the bottom-left box).
LabeledDiagram canonical_diagram(const Partition& lam) {
  LabeledDiagram d;
  for (int b = 0; b < static_cast<int>(lam.size()); ++b)
    for (int a = 1; a <= lam[b]; ++a) d.boxes.push_back({a, b});
  return d;
}

// sigma-coefficient products: every surgery factor evaluates at tau = p sigma
// to a rational multiple of sigma, so a factor multiset reduces to one
// rational coefficient and a sigma exponent.
struct SigmaProduct {
  Rational coeff = 1;
  long exponent = 0;

  void mul(const Rational& c) {
    coeff *= c;
    ++exponent;
  }
};

SigmaValue sv_from_terms(std::map<int, Rational> terms) {
  SigmaValue v;
  for (auto& [k, c] : terms)
    if (c != 0) v.terms.emplace(k, c);
  return v;
}

// Evaluates a class in (tau_1..tau_n, sigma) at tau_i = p_i sigma; the result
// must be free of the infinitesimal slot.
SigmaValue class_at_point(const Polynomial& alpha, const std::vector<Rational>& p) {
  int n = static_cast<int>(p.size());
  Matrix rows(n + 1);
  for (int i = 0; i < n; ++i) rows[i] = {p[i]};
  rows[n] = {Rational(1)};
  Polynomial folded = poly_subst_linear(alpha, rows, 1);
  std::map<int, Rational> terms;
  for (const auto& [exps, c] : folded.terms) {
    if (exps[1] != 0)
      throw jk_error(errc::hypothesis_violated, "class depends on the regulator");
    terms[static_cast<int>(exps[0])] += c;
  }
  return sv_from_terms(std::move(terms));
}

SigmaValue armleg_core(const Polynomial& alpha, int n, int N) {
  SigmaValue total;
  for (const Partition& lam : partitions(n)) {
    std::vector<long> p = content_vector(lam, N);
    Rational weight_prod = 1;
    int rows = static_cast<int>(lam.size());
    for (int b = 0; b < rows; ++b) {
      for (int a = 1; a <= lam[b]; ++a) {
        long arm = lam[b] - a;
        long leg = 0;
        for (int r = b + 1; r < rows; ++r)
          if (lam[r] >= a) ++leg;
        // Tangent weights at the fixed point with (t1, t2) = (N sigma, sigma).
        Rational w1 = Rational((leg + 1) * N - arm);
        Rational w2 = Rational(arm + 1 - leg * N);
        if (w1 == 0 || w2 == 0)
          throw jk_error(errc::degenerate_tuple, "vanishing tangent weight");
        weight_prod *= w1 * w2;
      }
    }
    std::vector<Rational> pq(p.begin(), p.end());
    SigmaValue term = sv_mul(class_at_point(alpha, pq),
                             sigma_monomial(Rational(1) / weight_prod, -2 * n));
    total = sv_add(total, term);
  }
  return total;
}

}  // namespace

SigmaValue sigma_monomial(const Rational& c, int k) {
  SigmaValue v;
  if (c != 0) v.terms.emplace(k, c);
  return v;
}

SigmaValue sv_add(const SigmaValue& a, const SigmaValue& b) {
  std::map<int, Rational> terms(a.terms.begin(), a.terms.end());
  for (const auto& [k, c] : b.terms) terms[k] += c;
  return sv_from_terms(std::move(terms));
}

SigmaValue sv_mul(const SigmaValue& a, const SigmaValue& b) {
  std::map<int, Rational> terms;
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) terms[ka + kb] += ca * cb;
  return sv_from_terms(std::move(terms));
}

std::vector<Partition> partitions(int n) {
  if (n < 0) throw jk_error(errc::invalid_n, "partition size must be nonnegative");
  std::vector<Partition> out;
  Partition cur;
  gen_partitions(n, n == 0 ? 1 : n, cur, out);
  return out;
}

std::string partition_name(const Partition& lam) {
  std::string s = "(";
  for (size_t i = 0; i < lam.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(lam[i]);
  }
  return s + ")";
}

std::vector<long> content_vector(const Partition& lam, int N) {
  int n = 0;
  for (int part : lam) {
    if (part <= 0) throw jk_error(errc::invalid_n, "partition parts must be positive");
    n += part;
  }
  require_valid_n(n, N);
  std::vector<long> p;
  for (int b = 0; b < static_cast<int>(lam.size()); ++b)
    for (int a = 1; a <= lam[b]; ++a) p.push_back(-(a + static_cast<long>(N) * b));
  return p;
}

Polynomial elementary_symmetric(int n, int k) {
  int nvars = n + 2;
  if (k < 0 || k > n) return Polynomial{nvars, {}};
  Polynomial out{nvars, {}};
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<int> exps(nvars, 0);
    for (int i : idx) exps[i] = 1;
    out.terms.emplace(std::move(exps), Rational(1));
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  if (k == 0) out.terms.emplace(std::vector<int>(nvars, 0), Rational(1));
  return out;
}

Fraction hilb_integrand(int n, int N) {
  require_valid_n(n, N);
  int dim = n + 1;
  int nv = dim + 1;
  int sigma = n;  // coordinate order: tau_1..tau_n, sigma

  auto cov = [&](const Rational& s_coeff, int i, int j) {
    Covector v(dim, Rational(0));
    v[sigma] = s_coeff;
    if (i >= 0) v[i] += 1;
    if (j >= 0) v[j] -= 1;
    return v;
  };

  Fraction f = frac_one(dim);
  for (int i = 0; i < n; ++i) f.exp.pert[i] = Rational(1, 2);

  Polynomial num =
      poly_const(nv, Rational(1) / (factorial(n) * pow_rational(Rational(N), n)));
  num = poly_mul(num, poly_pow(poly_linear(cov(Rational(N + 1), -1, -1)), n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      num = poly_mul(num, poly_linear(cov(Rational(0), i, j)));
      num = poly_mul(num, poly_linear(cov(Rational(N + 1), i, j)));
    }
  f.num = std::move(num);

  if (n > 0) frac_mul_den(f, cov(Rational(1), -1, -1), 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      frac_mul_den(f, cov(Rational(1), i, j), 1);
      frac_mul_den(f, cov(Rational(N), i, j), 1);
    }
  for (int k = 0; k < n; ++k) {
    frac_mul_den(f, cov(Rational(1), k, -1), 1);
    frac_mul_den(f, cov(Rational(N), -1, k), 1);
  }
  return f;
}

SigmaValue b_diagram(const LabeledDiagram& diagram, int N) {
  int n = static_cast<int>(diagram.boxes.size());
  require_valid_n(n, N);

  std::map<std::pair<int, int>, int> at;
  std::vector<long> p(n);
  for (int i = 0; i < n; ++i) {
    auto [a, b] = diagram.boxes[i];
    if (a < 1 || b < 0) throw jk_error(errc::invalid_n, "box outside the quadrant");
    if (!at.emplace(std::make_pair(a, b), i).second)
      throw jk_error(errc::invalid_n, "repeated box");
    p[i] = -(a + static_cast<long>(N) * b);
  }
  for (auto [a, b] : diagram.boxes) {
    if (a > 1 && !at.count({a - 1, b}))
      throw jk_error(errc::invalid_n, "diagram is not left-closed");
    if (b > 0 && !at.count({a, b - 1}))
      throw jk_error(errc::invalid_n, "diagram is not down-closed");
  }

  // Dashed replacements: a horizontal adjacency l -> k above the bottom row
  // trades the ((N+1)sigma + tau_k - tau_i) factor, i the box below l.
  std::set<std::pair<int, int>> dashed;  // ordered pair (k, i)
  for (int k = 0; k < n; ++k) {
    auto [a, b] = diagram.boxes[k];
    if (b == 0 || a == 1) continue;
    auto l = at.find({a - 1, b});
    if (l == at.end()) continue;
    auto below = at.find({a - 1, b - 1});
    assert(below != at.end());
    dashed.insert({k, below->second});
  }

  SigmaProduct num, den;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      num.mul(Rational(p[i] - p[j]));
      if (!dashed.count({i, j})) num.mul(Rational(N + 1 + p[i] - p[j]));
      auto [ai, bi] = diagram.boxes[i];
      auto [aj, bj] = diagram.boxes[j];
      // Factors vanishing on the pole subspace are exactly the adjacency ones.
      if (!(ai == aj + 1 && bi == bj)) den.mul(Rational(1 + p[i] - p[j]));
      if (!(ai == aj && bi == bj + 1)) den.mul(Rational(N + p[i] - p[j]));
    }
  for (int k = 0; k < n; ++k) {
    if (diagram.boxes[k] != std::make_pair(1, 0)) den.mul(Rational(1 + p[k]));
    den.mul(Rational(N - p[k]));
  }

  if (den.coeff == 0) throw jk_error(errc::degenerate_tuple, "vanishing kept factor");
  return sigma_monomial(num.coeff / den.coeff,
                        static_cast<int>(num.exponent - den.exponent));
}

SigmaValue b_lambda(const Partition& lam, int N) {
  int n = 0;
  for (int part : lam) n += part;
  require_valid_n(n, N);
  return b_diagram(canonical_diagram(lam), N);
}

SigmaValue armleg_oracle(const Polynomial& alpha, int n, int N) {
  require_valid_n(n, N);
  // Pin the weight convention once against the one-point value 1/(N sigma^2).
  static const bool pinned = [] {
    SigmaValue got = armleg_core(poly_const(3, Rational(1)), 1, 7);
    if (!(got == sigma_monomial(Rational(1, 7), -2)))
      throw std::logic_error("tangent weight convention drifted");
    return true;
  }();
  (void)pinned;
  return armleg_core(alpha, n, N);
}

SigmaValue hilb_integrate(const Polynomial& alpha, int n, int N, HilbMethod method) {
  require_valid_n(n, N);
  if (alpha.nvars != n + 2)
    throw jk_error(errc::dimension_mismatch, "class has the wrong coordinate count");
  if (!poly_symmetric_in_first(alpha, n))
    throw jk_error(errc::non_symmetric_class, "class is not symmetric in the points");

  if (method == HilbMethod::oracle) return armleg_oracle(alpha, n, N);

  if (method == HilbMethod::formula || n == 0) {
    SigmaValue total;
    for (const Partition& lam : partitions(n)) {
      std::vector<long> p = content_vector(lam, N);
      std::vector<Rational> pq(p.begin(), p.end());
      total = sv_add(total, sv_mul(class_at_point(alpha, pq), b_lambda(lam, N)));
    }
    SigmaValue prefactor =
        sigma_monomial(pow_rational(Rational(N + 1, N), n), -n);
    return sv_mul(prefactor, total);
  }

  // Full equivariant-residue evaluation.
  Fraction f = hilb_integrand(n, N);
  f.num = poly_mul(f.num, alpha);
  FractionSum sum = fs_make(n + 1, n);
  fs_add_term(sum, std::move(f));
  OrderedBasis x;
  x.vectors.resize(n + 1, Covector(n + 1, Rational(0)));
  x.vectors[0][n] = 1;  // sigma leads the residue order
  for (int i = 0; i < n; ++i) x.vectors[i + 1][i] = 1;
  ResidueValue r = limit_at_zero(eq_res(sum, x, n));

  std::map<int, Rational> terms;
  for (const Fraction& t : r.terms) {
    if (!is_zero(t.exp.base) || !is_zero(t.exp.pert))
      throw jk_error(errc::hypothesis_violated, "nonzero residual exponent");
    long den_pow = 0;
    Rational den_coeff = 1;
    for (const auto& df : t.den) {
      for (int i = 0; i < n; ++i)
        if (df.vec[i] != 0)
          throw jk_error(errc::hypothesis_violated, "residual point dependence");
      if (df.vec[n] == 0)
        throw jk_error(errc::hypothesis_violated, "degenerate residual factor");
      den_coeff *= pow_rational(df.vec[n], df.mult);
      den_pow += df.mult;
    }
    for (const auto& [exps, c] : t.num.terms) {
      for (int i = 0; i < n; ++i)
        if (exps[i] != 0)
          throw jk_error(errc::hypothesis_violated, "residual point dependence");
      if (exps[n + 1] != 0)
        throw jk_error(errc::hypothesis_violated, "residual regulator dependence");
      terms[static_cast<int>(exps[n] - den_pow)] += c / den_coeff;
    }
  }
  return sv_from_terms(std::move(terms));
}

bool kernel_member(const Polynomial& alpha, int n, int N) {
  require_valid_n(n, N);
  if (alpha.nvars != n + 2)
    throw jk_error(errc::dimension_mismatch, "class has the wrong coordinate count");
  if (!poly_symmetric_in_first(alpha, n))
    throw jk_error(errc::non_symmetric_class, "class is not symmetric in the points");
  for (const Partition& lam : partitions(n)) {
    std::vector<long> p = content_vector(lam, N);
    std::vector<Rational> pq(p.begin(), p.end());
    if (!class_at_point(alpha, pq).is_zero()) return false;
  }
  return true;
}

std::vector<Polynomial> ideal_generators(const Partition& lam, int n, int N) {
  require_valid_n(n, N);
  int total = 0;
  for (int part : lam) total += part;
  if (total != n) throw jk_error(errc::invalid_n, "partition size mismatch");
  std::vector<long> p = content_vector(lam, N);
  std::vector<Polynomial> gens;
  for (int k = 1; k <= n; ++k) {
    // e_k of the content values.
    Rational ek = 0;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Rational prod = 1;
      for (int i : idx) prod *= p[i];
      ek += prod;
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    Polynomial g = elementary_symmetric(n, k);
    poly_add_inplace(g, poly_scale(-ek, poly_var(n + 2, n, k)));
    gens.push_back(std::move(g));
  }
  return gens;
}

int evaluation_rank(int n, int N, int degree_bound) {
  require_valid_n(n, N);
  if (degree_bound < 0) throw jk_error(errc::invalid_n, "negative degree bound");

  std::vector<std::vector<Rational>> points;
  for (const Partition& lam : partitions(n)) {
    std::vector<long> p = content_vector(lam, N);
    points.emplace_back(p.begin(), p.end());
  }

  Matrix m;
  for (int d = 0; d <= degree_bound; ++d) {
    for (const Partition& mu : partitions(d)) {
      if (static_cast<int>(mu.size()) > n) continue;
      // m_mu at each point: sum over distinct permutations of the exponents.
      std::vector<long> exps(n, 0);
      for (size_t i = 0; i < mu.size(); ++i) exps[i] = mu[i];
      std::sort(exps.begin(), exps.end());
      Covector row;
      for (const auto& pt : points) {
        Rational val = 0;
        std::vector<long> e = exps;
        do {
          Rational prod = 1;
          for (int i = 0; i < n; ++i) prod *= pow_rational(pt[i], e[i]);
          val += prod;
        } while (std::next_permutation(e.begin(), e.end()));
        row.push_back(val);
      }
      m.push_back(std::move(row));
    }
  }
  return rank(m);
}

std::optional<Covector> pole_solution(const Pole& pole, int n) {
  if (static_cast<int>(pole.span.size()) != n) return std::nullopt;
  Covector p(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(pole.span[i].size()) != n + 1) return std::nullopt;
    for (int j = 0; j < n; ++j)
      if (pole.span[i][j] != Rational(i == j ? 1 : 0)) return std::nullopt;
    p[i] = -pole.span[i][n];
  }
  return p;
}

std::optional<LabeledDiagram> diagram_from_point(const Covector& p, int N) {
  int n = static_cast<int>(p.size());
  require_valid_n(n, N);
  LabeledDiagram d;
  std::set<std::pair<int, int>> occupied;
  for (const Rational& pi : p) {
    if (pi.get_den() != 1) return std::nullopt;
    if (pi >= 0) return std::nullopt;
    long m = -pi.get_num().get_si();
    int a = static_cast<int>((m - 1) % N) + 1;
    long b = (m - a) / N;
    if (!occupied.insert({a, static_cast<int>(b)}).second) return std::nullopt;
    d.boxes.push_back({a, static_cast<int>(b)});
  }
  for (auto [a, b] : d.boxes) {
    if (a > 1 && !occupied.count({a - 1, b})) return std::nullopt;
    if (b > 0 && !occupied.count({a, b - 1})) return std::nullopt;
  }
  return d;
}

}  // namespace jk
