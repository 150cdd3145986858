#pragma once

// Shared test utilities: an independent point-evaluation check for fraction
// sums plus deterministic random-instance generators. The evaluator walks the
// raw data structures directly, so it cannot share bugs with the library's
// rewriting code paths.

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jk/fraction.hpp"
#include "jk/linalg.hpp"
#include "jk/ratline.hpp"
#include "jk/rng.hpp"

namespace jktest {

using jk::Covector;
using jk::Fraction;
using jk::FractionSum;
using jk::Matrix;
using jk::OrderedBasis;
using jk::Polynomial;
using jk::Rational;

inline Rational dot_at(const Covector& v, const std::vector<Rational>& pt) {
  Rational r = 0;
  for (size_t i = 0; i < v.size(); ++i) r += v[i] * pt[i];
  return r;
}

// Numerators live over the coordinates plus a trailing regulator slot;
// evaluate by walking the exponent map directly.
inline Rational poly_at(const Polynomial& p, const std::vector<Rational>& pt,
                        const Rational& eps) {
  Rational total = 0;
  for (const auto& [exps, c] : p.terms) {
    Rational m = c;
    for (size_t i = 0; i < exps.size(); ++i) {
      const Rational& b = (i + 1 == exps.size()) ? eps : pt[i];
      for (int k = 0; k < exps[i]; ++k) m *= b;
    }
    total += m;
  }
  return total;
}

// Exponentials stay formal: group the rational parts by the exact pair of
// exponent values (base(pt), pert(pt)). nullopt when a denominator vanishes.
using GroupedValues = std::map<std::pair<Rational, Rational>, Rational>;

inline std::optional<GroupedValues> eval_groups(const FractionSum& s,
                                                const std::vector<Rational>& pt,
                                                const Rational& eps) {
  GroupedValues out;
  for (const auto& t : s.terms) {
    Rational den = 1;
    for (const auto& d : t.den) {
      Rational v = dot_at(d.vec, pt);
      if (v == 0) return std::nullopt;
      for (int k = 0; k < d.mult; ++k) den *= v;
    }
    auto key = std::make_pair(dot_at(t.exp.base, pt), dot_at(t.exp.pert, pt));
    out[key] += poly_at(t.num, pt, eps) / den;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

inline std::vector<Rational> random_point(jk::rational_stream& rng, int dim) {
  std::vector<Rational> pt(dim);
  for (auto& c : pt) c = rng.bounded_rational(-19, 19);
  return pt;
}

// Agreement of the grouped evaluations at `trials` random points with fresh
// regulator values; points where either side hits a pole are resampled.
inline bool same_function(const FractionSum& a, const FractionSum& b,
                          jk::rational_stream& rng, int trials = 12) {
  if (a.dim != b.dim) return false;
  int done = 0;
  int attempts = 0;
  while (done < trials) {
    if (++attempts > 200 * trials)
      throw std::runtime_error("evaluation oracle could not avoid the poles");
    auto pt = random_point(rng, a.dim);
    Rational eps = rng.small_rational();
    auto ga = eval_groups(a, pt, eps);
    auto gb = eval_groups(b, pt, eps);
    if (!ga || !gb) continue;
    if (*ga != *gb) return false;
    ++done;
  }
  return true;
}

inline bool is_zero_function(const FractionSum& a, jk::rational_stream& rng,
                             int trials = 12) {
  return same_function(a, FractionSum{a.dim, a.split, {}}, rng, trials);
}

// ---- builders and deterministic random generators -------------------------

inline Fraction make_term(int dim, const Rational& c, const Covector& base,
                          const std::vector<std::pair<Covector, int>>& dens,
                          const Covector& pert = {}) {
  Fraction f = jk::frac_one(dim);
  jk::frac_scale(f, c);
  f.exp.base = base;
  if (!pert.empty()) f.exp.pert = pert;
  for (const auto& [v, m] : dens) jk::frac_mul_den(f, v, m);
  return f;
}

inline FractionSum make_sum(int dim, std::vector<Fraction> terms,
                            std::optional<int> split = std::nullopt) {
  FractionSum s = jk::fs_make(dim, split);
  for (auto& t : terms) jk::fs_add_term(s, std::move(t));
  return s;
}

inline Covector random_int_covector(jk::rational_stream& rng, int dim, long lo, long hi,
                                    bool nonzero = true) {
  while (true) {
    Covector v(dim);
    bool all_zero = true;
    for (auto& c : v) {
      c = Rational(rng.integer(lo, hi));
      if (c != 0) all_zero = false;
    }
    if (!nonzero || !all_zero) return v;
  }
}

inline OrderedBasis random_generic_basis(jk::rational_stream& rng, int dim) {
  while (true) {
    Matrix m(dim, Covector(dim));
    for (auto& row : m)
      for (auto& c : row) c = rng.bounded_rational(-9, 9);
    if (jk::det(m) != 0) return OrderedBasis{m, std::nullopt};
  }
}

// Independent spanning denominator directions with integer entries.
inline Matrix random_independent_covectors(jk::rational_stream& rng, int dim, int count,
                                           long lo, long hi) {
  while (true) {
    Matrix m;
    for (int i = 0; i < count; ++i) m.push_back(random_int_covector(rng, dim, lo, hi));
    if (jk::rank(m) == count) return m;
  }
}

}  // namespace jktest
