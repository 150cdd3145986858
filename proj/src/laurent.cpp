#include "jk/laurent.hpp"

#include <algorithm>

#include "jk/errors.hpp"

namespace jk {

namespace {

// Drops monomials exceeding any per-coordinate bound (the infinitesimal slot
// is never truncated: numerators keep it polynomially).
Polynomial prune(const Polynomial& p, const std::vector<int>& bound) {
  Polynomial r = poly_zero(p.nvars);
  for (const auto& [key, c] : p.terms) {
    bool keep = true;
    for (size_t i = 0; i < bound.size(); ++i) {
      if (key[i] > bound[i]) {
        keep = false;
        break;
      }
    }
    if (keep) r.terms.emplace(key, c);
  }
  return r;
}

// Expands 1/(vec·x)^m in increasing powers of the earliest-ranked variable:
// for c·x_lead + w the series is sum_t (-1)^t C(m+t-1,t) c^t x_lead^t / w^{m+t},
// recursing into w, whose support is strictly later. Exact up to the caps.
Polynomial expand_factor(const Covector& vec, int m, const std::vector<int>& rank_of,
                         const std::vector<int>& cap, int nvars) {
  int lead = -1;
  for (size_t i = 0; i < vec.size(); ++i) {
    if (sgn(vec[i]) == 0) continue;
    if (lead < 0 || rank_of[i] < rank_of[lead]) lead = static_cast<int>(i);
  }
  if (lead < 0) throw jk_error(errc::zero_denominator_factor, "zero denominator factor");
  Rational c = vec[lead];
  Covector w = vec;
  w[lead] = 0;
  if (is_zero(w)) {
    Polynomial mono = poly_var(nvars, lead, -m);
    mono = poly_scale(pow_rational(c, -m), mono);
    return mono;
  }
  Polynomial acc = poly_zero(nvars);
  for (int t = 0; t <= cap[lead]; ++t) {
    Polynomial sub = expand_factor(w, m + t, rank_of, cap, nvars);
    Rational coeff = binomial(m + t - 1, t) * pow_rational(c, t);
    if (t % 2 == 1) coeff = -coeff;
    Polynomial piece = poly_mul(poly_var(nvars, lead, t), sub);
    poly_add_inplace(acc, poly_scale(coeff, piece));
  }
  return acc;
}

}  // namespace

LaurentSeries expand(const Fraction& f, int dim, const std::vector<int>& order,
                     const std::vector<int>& bound) {
  if (static_cast<int>(bound.size()) != dim)
    throw jk_error(errc::dimension_mismatch, "bound vector length mismatch");
  int nvars = dim + 1;

  // Total order: listed coordinates first, the rest by index.
  std::vector<int> rank_of(dim, -1);
  int next = 0;
  for (int v : order) {
    if (v < 0 || v >= dim || rank_of[v] >= 0)
      throw jk_error(errc::dimension_mismatch, "bad variable order");
    rank_of[v] = next++;
  }
  for (int i = 0; i < dim; ++i) {
    if (rank_of[i] < 0) rank_of[i] = next++;
  }

  // Safe per-variable series caps: a monomial of the full product can reach
  // exponent bound[i] even when one factor contributes more, offset by poles
  // of the others; the total pole order bounds that offset.
  int total_mult = 0;
  for (const auto& d : f.den) total_mult += d.mult;
  std::vector<int> cap(dim);
  for (int i = 0; i < dim; ++i) cap[i] = std::max(0, bound[i]) + total_mult;

  Polynomial acc = f.num;
  acc = prune(acc, cap);
  for (const auto& d : f.den) {
    acc = poly_mul(acc, expand_factor(d.vec, d.mult, rank_of, cap, nvars));
    acc = prune(acc, cap);
  }

  // Exponential directions along the listed variables expand as truncated
  // series; the remaining directions stay symbolic.
  LaurentSeries ls;
  ls.dim = dim;
  ls.order = order;
  ls.bound = bound;
  ls.exp_rest = zero_exponent(dim);
  for (int i = 0; i < dim; ++i) {
    bool listed = std::find(order.begin(), order.end(), i) != order.end();
    if (!listed) {
      ls.exp_rest.base[i] = f.exp.base[i];
      ls.exp_rest.pert[i] = f.exp.pert[i];
      continue;
    }
    if (sgn(f.exp.base[i]) == 0 && sgn(f.exp.pert[i]) == 0) continue;
    Polynomial series = poly_zero(nvars);
    Rational inv_fact(1);
    for (int k = 0; k <= cap[i]; ++k) {
      if (k > 0) inv_fact /= k;
      Polynomial term = poly_const(nvars, inv_fact);
      term = poly_mul_pair_pow(term, f.exp.base[i], f.exp.pert[i], k);
      poly_add_inplace(series, poly_mul(term, poly_var(nvars, i, k)));
    }
    acc = prune(poly_mul(acc, series), cap);
  }

  ls.series = prune(acc, bound);
  return ls;
}

LaurentSeries expand(const Fraction& f, int dim, const std::vector<int>& order, int bound) {
  return expand(f, dim, order, std::vector<int>(dim, bound));
}

Polynomial laurent_coefficient(const LaurentSeries& ls, const std::vector<int>& exps) {
  if (exps.size() != ls.order.size())
    throw jk_error(errc::dimension_mismatch, "exponent tuple length mismatch");
  Polynomial r = poly_zero(ls.series.nvars);
  for (const auto& [key, c] : ls.series.terms) {
    bool match = true;
    for (size_t j = 0; j < ls.order.size(); ++j) {
      if (key[ls.order[j]] != exps[j]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    std::vector<int> rest = key;
    for (int v : ls.order) rest[v] = 0;
    auto it = r.terms.find(rest);
    if (it == r.terms.end()) {
      r.terms.emplace(rest, c);
    } else {
      it->second += c;
      if (sgn(it->second) == 0) r.terms.erase(it);
    }
  }
  return r;
}

}  // namespace jk
