#include "jk/fraction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "jk/errors.hpp"

namespace jk {

namespace {

// Strict ordering helpers so terms can be grouped in maps.
bool covector_less(const Covector& a, const Covector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct DenKey {
  std::vector<DenFactor> den;  // sorted by vec
};

bool den_less(const DenKey& a, const DenKey& b) {
  if (a.den.size() != b.den.size()) return a.den.size() < b.den.size();
  for (size_t i = 0; i < a.den.size(); ++i) {
    if (a.den[i].vec != b.den[i].vec) return covector_less(a.den[i].vec, b.den[i].vec);
    if (a.den[i].mult != b.den[i].mult) return a.den[i].mult < b.den[i].mult;
  }
  return false;
}

struct TermKey {
  Covector base;
  Covector pert;
  DenKey den;
};

struct TermKeyLess {
  bool operator()(const TermKey& a, const TermKey& b) const {
    if (a.base != b.base) return covector_less(a.base, b.base);
    if (a.pert != b.pert) return covector_less(a.pert, b.pert);
    return den_less(a.den, b.den);
  }
};

// Normalizes a term's denominator in place: leading coefficients scaled to
// one with the constants folded into the returned scalar, factors sorted and
// merged.
Rational normalize_den(std::vector<DenFactor>& den) {
  Rational constant(1);
  std::map<Covector, int, decltype(&covector_less)> merged(&covector_less);
  for (const auto& f : den) {
    int lead = first_nonzero_index(f.vec);
    if (lead < 0) throw jk_error(errc::zero_denominator_factor, "zero denominator factor");
    Rational c = f.vec[lead];
    Covector unit = scale(Rational(1) / c, f.vec);
    constant *= pow_rational(c, -f.mult);
    merged[unit] += f.mult;
  }
  den.clear();
  for (auto& [vec, mult] : merged) {
    if (mult == 0) continue;
    if (mult < 0) throw std::logic_error("denominator multiplicity went negative");
    den.push_back(DenFactor{vec, mult});
  }
  return constant;
}

}  // namespace

PerturbedCovector zero_exponent(int dim) {
  PerturbedCovector e;
  e.base = zero_covector(dim);
  e.pert = zero_covector(dim);
  return e;
}

Fraction frac_one(int dim) {
  Fraction f;
  f.num = poly_const(dim + 1, Rational(1));
  f.exp = zero_exponent(dim);
  return f;
}

Fraction frac_const(int dim, const Rational& c) {
  Fraction f = frac_one(dim);
  f.num = poly_const(dim + 1, c);
  return f;
}

void frac_mul_den(Fraction& f, const Covector& vec, int mult) {
  if (is_zero(vec)) throw jk_error(errc::zero_denominator_factor, "zero denominator factor");
  if (mult == 0) return;
  for (auto it = f.den.begin(); it != f.den.end(); ++it) {
    if (it->vec == vec) {
      it->mult += mult;
      if (it->mult < 0) throw std::logic_error("denominator multiplicity went negative");
      if (it->mult == 0) f.den.erase(it);
      return;
    }
  }
  if (mult < 0) throw std::logic_error("cancelling a missing denominator factor");
  f.den.push_back(DenFactor{vec, mult});
}

void frac_scale(Fraction& f, const Rational& c) { f.num = poly_scale(c, f.num); }

Fraction frac_mul(const Fraction& a, const Fraction& b) {
  Fraction r;
  r.num = poly_mul(a.num, b.num);
  r.exp.base = add(a.exp.base, b.exp.base);
  r.exp.pert = add(a.exp.pert, b.exp.pert);
  r.den = a.den;
  for (const auto& f : b.den) frac_mul_den(r, f.vec, f.mult);
  return r;
}

FractionSum fs_make(int dim, std::optional<int> split) {
  FractionSum s;
  s.dim = dim;
  s.split = split;
  if (split && (*split < 0 || *split > dim))
    throw jk_error(errc::dimension_mismatch, "split block exceeds the dimension");
  return s;
}

void fs_add_term(FractionSum& s, Fraction f) {
  if (f.num.nvars != s.dim + 1 || static_cast<int>(f.exp.base.size()) != s.dim)
    throw jk_error(errc::dimension_mismatch, "term dimension mismatch");
  if (f.num.is_zero()) return;
  s.terms.push_back(std::move(f));
}

FractionSum fs_add(const FractionSum& a, const FractionSum& b) {
  if (a.dim != b.dim) throw jk_error(errc::dimension_mismatch, "sum dimension mismatch");
  FractionSum r = a;
  for (const auto& t : b.terms) r.terms.push_back(t);
  return r;
}

FractionSum fs_neg(const FractionSum& a) {
  FractionSum r = a;
  for (auto& t : r.terms) t.num = poly_neg(t.num);
  return r;
}

FractionSum fs_scale(const Rational& c, const FractionSum& a) {
  FractionSum r = a;
  if (sgn(c) == 0) {
    r.terms.clear();
    return r;
  }
  for (auto& t : r.terms) t.num = poly_scale(c, t.num);
  return r;
}

FractionSum fs_mul(const FractionSum& a, const FractionSum& b) {
  if (a.dim != b.dim) throw jk_error(errc::dimension_mismatch, "sum dimension mismatch");
  FractionSum r = fs_make(a.dim, a.split);
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) fs_add_term(r, frac_mul(ta, tb));
  }
  return r;
}

FractionSum fs_mul_frac(const FractionSum& a, const Fraction& f) {
  FractionSum r = fs_make(a.dim, a.split);
  for (const auto& t : a.terms) fs_add_term(r, frac_mul(t, f));
  return r;
}

void fs_compact(FractionSum& s) {
  std::map<TermKey, Polynomial, TermKeyLess> grouped;
  for (auto& t : s.terms) {
    std::vector<DenFactor> den = t.den;
    Rational scale = normalize_den(den);
    Polynomial num = poly_scale(scale, t.num);
    if (num.is_zero()) continue;
    TermKey key{t.exp.base, t.exp.pert, DenKey{std::move(den)}};
    auto it = grouped.find(key);
    if (it == grouped.end()) {
      grouped.emplace(std::move(key), std::move(num));
    } else {
      poly_add_inplace(it->second, num);
      if (it->second.is_zero()) grouped.erase(it);
    }
  }
  s.terms.clear();
  for (auto& [key, num] : grouped) {
    Fraction f;
    f.num = num;
    f.exp.base = key.base;
    f.exp.pert = key.pert;
    f.den = key.den.den;
    s.terms.push_back(std::move(f));
  }
}

FractionSum change_basis(const FractionSum& f, const Matrix& B) {
  if (static_cast<int>(B.size()) != f.dim)
    throw jk_error(errc::dimension_mismatch, "basis size mismatch");
  auto inv = inverse(B);
  if (!inv) throw jk_error(errc::singular_matrix, "coordinate change is singular");
  FractionSum r = fs_make(f.dim, f.split);
  for (const auto& t : f.terms) {
    Fraction g;
    g.num = poly_subst_linear(t.num, *inv, f.dim);
    g.exp.base = row_times_matrix(t.exp.base, *inv);
    g.exp.pert = row_times_matrix(t.exp.pert, *inv);
    g.den.reserve(t.den.size());
    for (const auto& d : t.den) g.den.push_back(DenFactor{row_times_matrix(d.vec, *inv), d.mult});
    fs_add_term(r, std::move(g));
  }
  return r;
}

bool fraction_sum_equal(const FractionSum& a, const FractionSum& b) {
  if (a.dim != b.dim) throw jk_error(errc::dimension_mismatch, "sum dimension mismatch");
  FractionSum diff = fs_add(a, fs_neg(b));
  fs_compact(diff);
  if (diff.terms.empty()) return true;

  // Group the remaining terms by exact exponent; exponentials with distinct
  // linear forms are linearly independent over rational functions, so each
  // group must cancel on its own over a common denominator.
  std::map<std::pair<Covector, Covector>, std::vector<const Fraction*>> groups;
  for (const auto& t : diff.terms) groups[{t.exp.base, t.exp.pert}].push_back(&t);
  for (const auto& [exp, terms] : groups) {
    std::map<Covector, int, decltype(&covector_less)> common(&covector_less);
    std::vector<std::map<Covector, int, decltype(&covector_less)>> per_term;
    for (const Fraction* t : terms) {
      std::map<Covector, int, decltype(&covector_less)> m(&covector_less);
      for (const auto& d : t->den) m[d.vec] += d.mult;
      for (const auto& [vec, mult] : m) common[vec] = std::max(common[vec], mult);
      per_term.push_back(std::move(m));
    }
    Polynomial total = poly_zero(diff.dim + 1);
    for (size_t i = 0; i < terms.size(); ++i) {
      Polynomial part = terms[i]->num;
      for (const auto& [vec, mult] : common) {
        auto it = per_term[i].find(vec);
        int have = it == per_term[i].end() ? 0 : it->second;
        if (mult > have) part = poly_mul(part, poly_pow(poly_linear(vec), mult - have));
      }
      poly_add_inplace(total, part);
    }
    if (!total.is_zero()) return false;
  }
  return true;
}

FractionSum limit_at_zero(const FractionSum& f) {
  FractionSum r = fs_make(f.dim, f.split);
  for (const auto& t : f.terms) {
    Fraction g = t;
    g.num = poly_drop_infinitesimal(t.num);
    g.exp.pert = zero_covector(f.dim);
    if (g.num.is_zero()) continue;
    r.terms.push_back(std::move(g));
  }
  return r;
}

std::optional<std::map<Rational, Rational>> fs_eval_groups(const FractionSum& s,
                                                           const std::vector<Rational>& coords,
                                                           const Rational& eps_value) {
  if (static_cast<int>(coords.size()) != s.dim)
    throw jk_error(errc::dimension_mismatch, "evaluation point length mismatch");
  std::vector<Rational> full = coords;
  full.push_back(eps_value);
  std::map<Rational, Rational> out;
  for (const auto& t : s.terms) {
    Rational den(1);
    for (const auto& d : t.den) {
      Rational v(0);
      for (size_t i = 0; i < d.vec.size(); ++i) v += d.vec[i] * coords[i];
      if (sgn(v) == 0) return std::nullopt;
      den *= pow_rational(v, d.mult);
    }
    Rational lam(0);
    for (size_t i = 0; i < t.exp.base.size(); ++i)
      lam += (t.exp.base[i] + eps_value * t.exp.pert[i]) * coords[i];
    Rational part = poly_eval(t.num, full) / den;
    out[lam] += part;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (sgn(it->second) == 0) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

DecomposeResult decompose_generating(const FractionSum& f) {
  int qt = f.proj_dim();
  DecomposeResult out{fs_make(f.dim, f.split), fs_make(f.dim, f.split)};

  struct WorkItem {
    Fraction term;
    std::map<Covector, int> position;  // stable order for the pivot rule
    int next_position = 0;
  };

  auto proj = [&](const Covector& v) { return Covector(v.begin(), v.begin() + qt); };

  std::vector<WorkItem> work;
  for (const auto& t : f.terms) {
    WorkItem w;
    w.term = t;
    for (const auto& d : t.den) {
      if (!w.position.count(d.vec)) w.position[d.vec] = w.next_position++;
    }
    work.push_back(std::move(w));
  }

  while (!work.empty()) {
    WorkItem w = std::move(work.back());
    work.pop_back();
    const Fraction& t = w.term;

    // Entries of the denominator with nonzero projection, in stored order.
    std::vector<size_t> support;
    for (size_t i = 0; i < t.den.size(); ++i) {
      if (!is_zero(proj(t.den[i].vec))) support.push_back(i);
    }

    // Incrementally eliminate projections, recording each row as a
    // combination of the original support entries so a dependency yields a
    // minimal relation.
    std::vector<Covector> rows;                 // reduced projections
    std::vector<std::vector<Rational>> combos;  // rows as combinations over `support`
    std::optional<std::vector<Rational>> relation;
    for (size_t si = 0; si < support.size() && !relation; ++si) {
      Covector v = proj(t.den[support[si]].vec);
      std::vector<Rational> combo(support.size(), Rational(0));
      combo[si] = Rational(1);
      for (size_t r = 0; r < rows.size(); ++r) {
        int p = first_nonzero_index(rows[r]);
        if (sgn(v[p]) == 0) continue;
        Rational factor = v[p] / rows[r][p];
        v = sub(v, scale(factor, rows[r]));
        for (size_t j = 0; j < combo.size(); ++j) combo[j] -= factor * combos[r][j];
      }
      if (is_zero(v)) {
        relation = combo;  // sum_j combo_j * proj(alpha_j) = 0, support includes si
      } else {
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
      }
    }

    if (!relation) {
      if (qt == 0 || static_cast<int>(rows.size()) == qt) {
        fs_add_term(out.generating, t);
      } else {
        fs_add_term(out.nongenerating, t);
      }
      continue;
    }

    // Rewrite 1 = sum c_i alpha_i / beta (or eliminate the latest entry when
    // beta vanishes); each child keeps the numerator and exponent intact.
    std::vector<size_t> T;
    std::vector<Rational> c;
    for (size_t j = 0; j < relation->size(); ++j) {
      if (sgn((*relation)[j]) != 0) {
        T.push_back(support[j]);
        c.push_back((*relation)[j]);
      }
    }
    Covector beta = zero_covector(f.dim);
    for (size_t j = 0; j < T.size(); ++j) beta = add(beta, scale(c[j], t.den[T[j]].vec));

    if (is_zero(beta)) {
      size_t pivot_j = 0;
      for (size_t j = 1; j < T.size(); ++j) {
        if (w.position.at(t.den[T[j]].vec) > w.position.at(t.den[T[pivot_j]].vec)) pivot_j = j;
      }
      const Covector pivot_vec = t.den[T[pivot_j]].vec;
      for (size_t j = 0; j < T.size(); ++j) {
        if (j == pivot_j) continue;
        WorkItem child = w;
        frac_scale(child.term, -c[j] / c[pivot_j]);
        Covector vj = t.den[T[j]].vec;
        frac_mul_den(child.term, vj, -1);
        frac_mul_den(child.term, pivot_vec, 1);
        work.push_back(std::move(child));
      }
    } else {
      for (size_t j = 0; j < T.size(); ++j) {
        WorkItem child = w;
        frac_scale(child.term, c[j]);
        Covector vj = t.den[T[j]].vec;
        frac_mul_den(child.term, vj, -1);
        frac_mul_den(child.term, beta, 1);
        if (!child.position.count(beta)) child.position[beta] = child.next_position++;
        work.push_back(std::move(child));
      }
    }
  }

  fs_compact(out.generating);
  fs_compact(out.nongenerating);
  return out;
}

}  // namespace jk
