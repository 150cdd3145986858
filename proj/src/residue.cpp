#include "jk/residue.hpp"

#include <algorithm>
#include <set>

#include "jk/errors.hpp"

namespace jk {

namespace {

struct MixedFactor {
  Rational c;   // coefficient of the residue variable
  Covector w;   // remainder supported away from it
  int mult = 1;
};

// Distributes `rem` extra powers over the mixed factors: factor j at level t
// contributes (-1)^t C(m_j+t-1, t) c_j^t and a denominator power w_j^{m_j+t}.
void distribute_mixed(const std::vector<MixedFactor>& mixed, size_t j, int rem,
                      const Rational& scale, std::vector<DenFactor>& dens, const Fraction& proto,
                      FractionSum& out) {
  if (j == mixed.size()) {
    if (rem != 0) return;
    Fraction f = proto;
    f.num = poly_scale(scale, f.num);
    for (const auto& d : dens) frac_mul_den(f, d.vec, d.mult);
    fs_add_term(out, std::move(f));
    return;
  }
  for (int t = 0; t <= rem; ++t) {
    Rational factor = binomial(mixed[j].mult + t - 1, t) * pow_rational(mixed[j].c, t);
    if (t % 2 == 1) factor = -factor;
    dens.push_back(DenFactor{mixed[j].w, mixed[j].mult + t});
    distribute_mixed(mixed, j + 1, rem - t, scale * factor, dens, proto, out);
    dens.pop_back();
  }
}

void single_residue_term(const Fraction& t, int dim, int a, FractionSum& out) {
  int m0 = 0;
  Rational c_pure(1);
  std::vector<MixedFactor> mixed;
  std::vector<DenFactor> rest;
  for (const auto& d : t.den) {
    if (sgn(d.vec[a]) == 0) {
      rest.push_back(d);
      continue;
    }
    Covector w = d.vec;
    w[a] = 0;
    if (is_zero(w)) {
      m0 += d.mult;
      c_pure *= pow_rational(d.vec[a], d.mult);
    } else {
      mixed.push_back(MixedFactor{d.vec[a], std::move(w), d.mult});
    }
  }
  if (m0 == 0) return;  // all series sit in non-negative powers

  auto parts = poly_split_by_var(t.num, a);
  Rational mu_base = t.exp.base[a];
  Rational mu_pert = t.exp.pert[a];
  bool mu_zero = sgn(mu_base) == 0 && sgn(mu_pert) == 0;
  PerturbedCovector exp_rest = t.exp;
  exp_rest.base[a] = 0;
  exp_rest.pert[a] = 0;

  int need = m0 - 1;
  Rational inv_pure = Rational(1) / c_pure;
  for (const auto& [d, pd] : parts) {
    if (d > need) continue;
    Rational inv_fact(1);
    for (int e = 0; e + d <= need; ++e) {
      if (e > 0) {
        if (mu_zero) break;
        inv_fact /= e;
      }
      Fraction proto;
      proto.num = poly_mul_pair_pow(pd, mu_base, mu_pert, e);
      proto.exp = exp_rest;
      proto.den = rest;
      std::vector<DenFactor> dens;
      distribute_mixed(mixed, 0, need - d - e, inv_pure * inv_fact, dens, proto, out);
    }
  }
}

// Reduces v against triangular rows (row i carries its pivot at column i).
Covector reduce_against(const Covector& v, const std::vector<Covector>& rows,
                        const std::vector<int>& pivot_cols) {
  Covector r = v;
  for (size_t i = 0; i < rows.size(); ++i) {
    int p = pivot_cols[i];
    if (sgn(r[p]) == 0) continue;
    Rational f = r[p] / rows[i][p];
    r = sub(r, scale(f, rows[i]));
  }
  return r;
}

Covector normalize_row(const Covector& v) {
  int lead = first_nonzero_index(v);
  return scale(Rational(1) / v[lead], v);
}

// Shared evaluation of one accepted tuple; assumes triangular reduction
// already succeeded with the given reduced rows.
FractionSum tuple_value(const Fraction& term, int dim, int k,
                        const std::vector<Covector>& reduced, bool all_active_simple,
                        const std::vector<int>& tuple) {
  // Fast path: the tuple exhausts the active denominator entries with simple
  // poles, so the cascade evaluates everything else where the active
  // coordinates vanish.
  if (all_active_simple) {
    Rational det_signed(1);
    for (int i = 0; i < k; ++i) det_signed *= reduced[i][i];
    Fraction f;
    f.num = poly_zero(dim + 1);
    for (const auto& [key, c] : term.num.terms) {
      bool active = false;
      for (int i = 0; i < k; ++i) {
        if (key[i] != 0) {
          active = true;
          break;
        }
      }
      if (!active) f.num.terms.emplace(key, c);
    }
    if (f.num.is_zero()) return fs_make(dim);
    f.num = poly_scale(Rational(1) / det_signed, f.num);
    f.exp = term.exp;
    for (int i = 0; i < k; ++i) {
      f.exp.base[i] = 0;
      f.exp.pert[i] = 0;
    }
    std::set<int> in_tuple(tuple.begin(), tuple.end());
    for (size_t di = 0; di < term.den.size(); ++di) {
      if (in_tuple.count(static_cast<int>(di))) continue;
      Covector vec = term.den[di].vec;
      for (int i = 0; i < k; ++i) vec[i] = 0;
      frac_mul_den(f, vec, term.den[di].mult);
    }
    FractionSum out = fs_make(dim);
    fs_add_term(out, std::move(f));
    return out;
  }

  // Full path: change to the polarized triangular coordinates, run the exact
  // u^{-1}-coefficient cascade, divide by the diagonal product. The trailing
  // identity completion keeps the surviving coordinates untouched.
  Matrix B;
  Rational delta(1);
  for (int i = 0; i < k; ++i) {
    Covector u = reduced[i];
    if (sgn(u[i]) < 0) u = scale(Rational(-1), u);
    delta *= u[i];
    B.push_back(std::move(u));
  }
  for (int j = k; j < dim; ++j) {
    Covector e = zero_covector(dim);
    e[j] = 1;
    B.push_back(std::move(e));
  }
  FractionSum g = fs_make(dim);
  fs_add_term(g, term);
  g = change_basis(g, B);
  for (int i = 0; i < k; ++i) g = single_residue(g, i);
  return fs_scale(Rational(1) / delta, g);
}

}  // namespace

FractionSum single_residue(const FractionSum& f, int var) {
  FractionSum out = fs_make(f.dim, f.split);
  for (const auto& t : f.terms) single_residue_term(t, f.dim, var, out);
  fs_compact(out);
  return out;
}

std::vector<TupleContribution> res_plus_term(const Fraction& term, int dim, int k_active) {
  std::vector<TupleContribution> out;

  // Candidate directions: denominator entries supported on the active block.
  std::vector<int> active;
  for (size_t i = 0; i < term.den.size(); ++i) {
    bool ok = true;
    for (int j = k_active; j < dim; ++j) {
      if (sgn(term.den[i].vec[j]) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) active.push_back(static_cast<int>(i));
  }
  if (static_cast<int>(active.size()) < k_active) return out;

  bool all_simple = static_cast<int>(active.size()) == k_active;
  if (all_simple) {
    for (int i : active) {
      if (term.den[i].mult != 1) {
        all_simple = false;
        break;
      }
    }
  }

  std::set<std::vector<Covector>> seen;
  std::vector<int> pivot_cols;
  std::vector<Covector> reduced;
  std::vector<int> tuple;
  std::vector<bool> used(term.den.size(), false);

  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == k_active) {
      std::vector<Covector> signature;
      signature.reserve(reduced.size());
      for (const auto& r : reduced) signature.push_back(normalize_row(r));
      if (!seen.insert(signature).second) return;

      TupleContribution tc;
      tc.den_indices = tuple;

      Matrix B;
      for (int i = 0; i < k_active; ++i) {
        Covector u = reduced[i];
        if (sgn(u[i]) < 0) u = scale(Rational(-1), u);
        B.push_back(std::move(u));
      }
      for (int j = k_active; j < dim; ++j) {
        Covector e = zero_covector(dim);
        e[j] = 1;
        B.push_back(std::move(e));
      }
      auto base = solve_row(B, term.exp.base);
      auto pert = solve_row(B, term.exp.pert);
      if (!base || !pert) return;  // cannot happen: B is triangular with unit tail
      bool pass = true;
      for (int i = 0; i < k_active; ++i) {
        tc.lambda.emplace_back((*base)[i], (*pert)[i]);
        int s = sgn((*base)[i]) != 0 ? sgn((*base)[i]) : sgn((*pert)[i]);
        if (s != 0) tc.order = i + 1;
        if (s < 0) pass = false;
      }
      tc.gate_passed = pass;
      tc.value = pass ? tuple_value(term, dim, k_active, reduced, all_simple, tuple)
                      : fs_make(dim);
      out.push_back(std::move(tc));
      return;
    }
    for (int i : active) {
      if (used[i]) continue;
      Covector r = reduce_against(term.den[i].vec, reduced, pivot_cols);
      if (first_nonzero_index(r) != depth) continue;  // triangular reduction fails
      used[i] = true;
      tuple.push_back(i);
      reduced.push_back(std::move(r));
      pivot_cols.push_back(depth);
      self(self, depth + 1);
      pivot_cols.pop_back();
      reduced.pop_back();
      tuple.pop_back();
      used[i] = false;
    }
  };
  dfs(dfs, 0);
  return out;
}

ResidueValue res_plus_active(const FractionSum& f, int k_active) {
  FractionSum out = fs_make(f.dim, f.split);
  for (const auto& t : f.terms) {
    for (auto& tc : res_plus_term(t, f.dim, k_active)) {
      if (!tc.gate_passed) continue;
      for (auto& term : tc.value.terms) out.terms.push_back(std::move(term));
    }
  }
  fs_compact(out);
  return out;
}

ResidueValue iterated_residue(const Fraction& f, const OrderedBasis& basis,
                              const std::vector<Covector>& betas) {
  int dim = static_cast<int>(basis.dim());
  FractionSum g = fs_make(dim);
  fs_add_term(g, f);
  g = change_basis(g, basis.vectors);

  int k = static_cast<int>(betas.size());
  std::vector<Covector> reduced;
  std::vector<int> pivot_cols;
  for (int i = 0; i < k; ++i) {
    Covector b = to_basis_coords(betas[i], basis);
    Covector r = reduce_against(b, reduced, pivot_cols);
    if (first_nonzero_index(r) != i) return fs_make(dim);  // vanishing rule
    reduced.push_back(std::move(r));
    pivot_cols.push_back(i);
  }

  Matrix B;
  Rational delta(1);
  for (int i = 0; i < k; ++i) {
    Covector u = reduced[i];
    if (sgn(u[i]) < 0) u = scale(Rational(-1), u);
    delta *= u[i];
    B.push_back(std::move(u));
  }
  for (int j = k; j < dim; ++j) {
    Covector e = zero_covector(dim);
    e[j] = 1;
    B.push_back(std::move(e));
  }
  g = change_basis(g, B);
  for (int i = 0; i < k; ++i) g = single_residue(g, i);
  return fs_scale(Rational(1) / delta, g);
}

ResidueValue res_plus(const FractionSum& f, const OrderedBasis& basis) {
  int dim = static_cast<int>(basis.dim());
  if (f.dim != dim) throw jk_error(errc::dimension_mismatch, "basis dimension mismatch");
  FractionSum g = change_basis(f, basis.vectors);
  return res_plus_active(g, dim);
}

ResidueValue jk_res(const FractionSum& f, const OrderedBasis& basis) {
  // Validate the basis up front so a degenerate one reports SingularBasis.
  Rational gram = gram_factor(basis);
  return fs_scale(gram, res_plus(f, basis));
}

ResidueValue closed_form_simple(const PerturbedCovector& lambda,
                                const std::vector<std::pair<Covector, int>>& alphas,
                                const OrderedBasis& basis) {
  int r = static_cast<int>(basis.dim());
  if (static_cast<int>(alphas.size()) != r)
    throw jk_error(errc::dependent_alphas, "need exactly as many directions as the rank");

  Matrix m;
  std::vector<int> signs;
  for (const auto& [vec, mult] : alphas) {
    auto [tilde, s] = polarize(vec, basis);
    m.push_back(to_basis_coords(tilde, basis));
    signs.push_back(s);
    if (mult < 1) throw jk_error(errc::zero_denominator_factor, "multiplicity must be positive");
  }
  Rational d = det(m);
  if (sgn(d) == 0) throw jk_error(errc::dependent_alphas, "directions are dependent");

  auto base = solve_row(m, to_basis_coords(lambda.base, basis));
  auto pert = solve_row(m, to_basis_coords(lambda.pert, basis));
  FractionSum out = fs_make(r);
  Polynomial num = poly_const(r + 1, Rational(1) / abs(d));
  for (int i = 0; i < r; ++i) {
    Rational b = (*base)[i];
    Rational p = (*pert)[i];
    int s = sgn(b) != 0 ? sgn(b) : sgn(p);
    if (s == 0)
      throw jk_error(errc::non_generic_lambda, "exponent lies on a residue wall");
    if (s < 0) return out;  // outside the polarized cone: the value vanishes
    int mult = alphas[i].second;
    if (signs[i] < 0 && mult % 2 == 1) num = poly_neg(num);
    num = poly_mul_pair_pow(num, b, p, mult - 1);
    num = poly_scale(Rational(1) / factorial(mult - 1), num);
  }
  Fraction f;
  f.num = num;
  f.exp = zero_exponent(r);
  fs_add_term(out, std::move(f));
  return out;
}

int residue_order(const PerturbedCovector& lambda, const std::vector<Covector>& betas,
                  const OrderedBasis& basis) {
  int dim = static_cast<int>(basis.dim());
  int k = static_cast<int>(betas.size());
  std::vector<Covector> reduced;
  std::vector<int> pivot_cols;
  for (int i = 0; i < k; ++i) {
    Covector b = to_basis_coords(betas[i], basis);
    Covector r = reduce_against(b, reduced, pivot_cols);
    if (first_nonzero_index(r) != i)
      throw jk_error(errc::degenerate_tuple, "directions do not reduce triangularly");
    reduced.push_back(std::move(r));
    pivot_cols.push_back(i);
  }
  Matrix B;
  for (int i = 0; i < k; ++i) {
    Covector u = reduced[i];
    if (sgn(u[i]) < 0) u = scale(Rational(-1), u);
    B.push_back(std::move(u));
  }
  for (int j = k; j < dim; ++j) {
    Covector e = zero_covector(dim);
    e[j] = 1;
    B.push_back(std::move(e));
  }
  auto base = solve_row(B, to_basis_coords(lambda.base, basis));
  auto pert = solve_row(B, to_basis_coords(lambda.pert, basis));
  int order = 0;
  for (int i = 0; i < dim; ++i) {
    if (sgn((*base)[i]) != 0 || sgn((*pert)[i]) != 0) order = i + 1;
  }
  return order;
}

}  // namespace jk
