#pragma once

#include "jk/fraction.hpp"
#include "jk/ratline.hpp"

namespace jk {

/// Residue results stay FractionSums over the same coordinate slots; consumed
/// coordinates no longer occur in numerators, exponents or denominators.
using ResidueValue = FractionSum;

/// Coefficient of var^{-1} of every term, computed exactly (no truncation):
/// pure factors in var set the pole order; factors mixing var with later
/// support contribute binomial series terms; the exponential direction along
/// var contributes its Taylor coefficients.
FractionSum single_residue(const FractionSum& f, int var);

/// One ordered tuple's contribution to the positive iterated residue of a
/// single term. lambda holds the (base, pert) expansion coefficient of the
/// term's exponent per residue step; order is the largest step index (1-based)
/// with nonzero pair, 0 when all vanish.
struct TupleContribution {
  std::vector<int> den_indices;
  std::vector<std::pair<Rational, Rational>> lambda;
  int order = 0;
  bool gate_passed = false;
  FractionSum value;  // empty when the gate fails
};

/// Enumerates non-equivalent ordered tuples drawn from the term's denominator
/// vectors supported on the first k_active coordinates, keeping those whose
/// triangular reduction succeeds; evaluates each passing tuple.
std::vector<TupleContribution> res_plus_term(const Fraction& term, int dim, int k_active);

/// Positive iterated residue in the current coordinates, with tuple
/// candidates restricted to the first k_active coordinates (k_active = dim
/// recovers the plain definition).
ResidueValue res_plus_active(const FractionSum& f, int k_active);

/// Iterated residue along the given directions (no positivity gates): zero
/// when the triangular reduction fails, else the u^{-1}-coefficient cascade
/// divided by the diagonal product.
ResidueValue iterated_residue(const Fraction& f, const OrderedBasis& basis,
                              const std::vector<Covector>& betas);

ResidueValue res_plus(const FractionSum& f, const OrderedBasis& basis);

/// gram_factor(basis) * res_plus(f, basis).
ResidueValue jk_res(const FractionSum& f, const OrderedBasis& basis);

/// Closed form for a single fraction with independent spanning denominator
/// directions: expand lambda over the polarized directions; the value is
/// prod sign^{m_i} lambda_i^{m_i-1}/(m_i-1)! / |det| when every coefficient is
/// positive, zero when one is negative.
ResidueValue closed_form_simple(const PerturbedCovector& lambda,
                                const std::vector<std::pair<Covector, int>>& alphas,
                                const OrderedBasis& basis);

/// Largest index with nonzero expansion coefficient of lambda over the
/// polarized reduced betas completed by coordinate directions.
int residue_order(const PerturbedCovector& lambda, const std::vector<Covector>& betas,
                  const OrderedBasis& basis);

}  // namespace jk
