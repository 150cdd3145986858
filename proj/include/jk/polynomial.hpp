#pragma once

#include <map>
#include <vector>

#include "jk/linalg.hpp"

namespace jk {

/// Sparse exact polynomial. Variables 0..nvars-2 are the current coordinates;
/// the trailing slot nvars-1 is the infinitesimal regulator parameter, which
/// never takes part in coordinate changes. Exponents may go negative only
/// inside Laurent-series coefficients.
struct Polynomial {
  int nvars = 0;
  std::map<std::vector<int>, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const Polynomial& o) const { return nvars == o.nvars && terms == o.terms; }
};

Polynomial poly_zero(int nvars);
Polynomial poly_const(int nvars, const Rational& c);
Polynomial poly_var(int nvars, int i, int power = 1);

/// Linear polynomial cov_0 x_0 + ... + cov_{d-1} x_{d-1} (+ eps_coeff * eps).
Polynomial poly_linear(const Covector& cov, const Rational& eps_coeff = Rational(0));

void poly_add_inplace(Polynomial& p, const Polynomial& q);
Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_sub(const Polynomial& p, const Polynomial& q);
Polynomial poly_neg(const Polynomial& p);
Polynomial poly_scale(const Rational& c, const Polynomial& p);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial poly_pow(const Polynomial& p, long e);

/// Substitutes coordinate i by the linear form rows[i] over dim_new new
/// coordinates; the infinitesimal slot passes through unchanged.
Polynomial poly_subst_linear(const Polynomial& p, const Matrix& rows, int dim_new);

/// Evaluates with values for every slot including the infinitesimal one.
Rational poly_eval(const Polynomial& p, const std::vector<Rational>& values);

/// Substitutes coordinate slots by rationals, keeping the infinitesimal slot
/// symbolic (used for evaluation at a pole point tau = p*sigma etc. when the
/// caller has already folded sigma in).
Polynomial poly_eval_coords(const Polynomial& p, const std::vector<Rational>& coord_values);

/// Decomposes by the exponent of variable a: degree -> polynomial with slot a
/// zeroed out.
std::map<int, Polynomial> poly_split_by_var(const Polynomial& p, int a);

int poly_degree_in(const Polynomial& p, int a);

/// Substitutes the infinitesimal parameter by zero.
Polynomial poly_drop_infinitesimal(const Polynomial& p);

/// Multiplies by (base + eps * pert)^e for scalar pair (base, pert).
Polynomial poly_mul_pair_pow(const Polynomial& p, const Rational& base, const Rational& pert,
                             long e);

/// Invariance under all permutations of coordinate slots 0..n-1 (checked via
/// adjacent transpositions).
bool poly_symmetric_in_first(const Polynomial& p, int n);

/// Applies a permutation of coordinate slots: new_slot[i] = image of slot i.
Polynomial poly_permute(const Polynomial& p, const std::vector<int>& image);

}  // namespace jk
