#pragma once

#include "jk/residue.hpp"

namespace jk {

/// A pole: a subspace spanned by denominator vectors, complementary to the
/// trailing coordinate block. `span` is the canonical reduced row form used
/// for deduplication; `generators` keeps one spanning set of denominator
/// vectors; `induced` is the dual-minimal induced basis (ambient covectors)
/// and `gram` the pull-back scalar-product factor.
struct Pole {
  Matrix span;
  Matrix generators;
  OrderedBasis induced;
  Rational gram;
};

/// All distinct subspaces spanned by `split` denominator vectors of a single
/// term whose leading-block projections are independent.
std::vector<Pole> enumerate_poles(const FractionSum& f, const OrderedBasis& x, int split);

/// Dual-minimal induced basis of the span of the given vectors: expand the
/// generators over x, pick the greedy-from-left independent column set, and
/// normalize so the chosen columns carry the identity.
OrderedBasis induced_basis(const Matrix& generators, const OrderedBasis& x, int split);

/// Contribution of a single pole to eq_res: the pull-back factor times the
/// positive residue taken along the pole's induced coordinates.
ResidueValue eq_res_at_pole(const FractionSum& f, const OrderedBasis& x, int split,
                            const Pole& pole);

/// Equivariant iterated residue: sum over poles of the pull-back factor times
/// the positive residue taken along the pole's induced coordinates, leaving a
/// FractionSum over the trailing block.
ResidueValue eq_res(const FractionSum& f, const OrderedBasis& x, int split);

/// Closed form at a simple pole: with lambda = lambda_0 + sum lambda_i
/// alpha~_i, the value is e^{lambda_0} prod sign^{m_i} lambda_i^{m_i-1} /
/// (m_i-1)! / |det of the leading-block matrix|, and zero when that
/// determinant vanishes or some lambda_i < 0.
ResidueValue closed_form_eq_res(const PerturbedCovector& lambda,
                                const std::vector<std::pair<Covector, int>>& alphas,
                                const OrderedBasis& x, int split);

}  // namespace jk
