#pragma once

#include <optional>
#include <vector>

#include "jk/polynomial.hpp"

namespace jk {

/// Exponent linear form base + eps * pert, both acting on the current
/// coordinates.
struct PerturbedCovector {
  Covector base;
  Covector pert;

  bool operator==(const PerturbedCovector& o) const { return base == o.base && pert == o.pert; }
};

PerturbedCovector zero_exponent(int dim);

struct DenFactor {
  Covector vec;
  int mult = 1;
};

/// One polynomial-exponential fraction num * e^{exp} / prod den_i^{mult_i}.
struct Fraction {
  Polynomial num;
  PerturbedCovector exp;
  std::vector<DenFactor> den;
};

/// A finite sum of fractions over a fixed coordinate system. When `split` is
/// set, the first `split` coordinates span the distinguished dual block used
/// for projections; otherwise every coordinate belongs to it.
struct FractionSum {
  int dim = 0;
  std::optional<int> split;
  std::vector<Fraction> terms;

  int proj_dim() const { return split ? *split : dim; }
};

Fraction frac_one(int dim);
Fraction frac_const(int dim, const Rational& c);

/// Multiplies a power of a linear factor into the denominator, merging with an
/// exactly equal existing factor. mult may be negative to cancel existing
/// powers; the remaining multiplicity must stay non-negative.
void frac_mul_den(Fraction& f, const Covector& vec, int mult);

void frac_scale(Fraction& f, const Rational& c);
Fraction frac_mul(const Fraction& a, const Fraction& b);

FractionSum fs_make(int dim, std::optional<int> split = std::nullopt);
void fs_add_term(FractionSum& s, Fraction f);
FractionSum fs_add(const FractionSum& a, const FractionSum& b);
FractionSum fs_neg(const FractionSum& a);
FractionSum fs_scale(const Rational& c, const FractionSum& a);
FractionSum fs_mul(const FractionSum& a, const FractionSum& b);
FractionSum fs_mul_frac(const FractionSum& a, const Fraction& f);

/// Scale-normalizes denominator vectors (leading coefficient one, constants
/// folded into the numerator), merges identical factors, drops zero terms and
/// combines terms sharing exponent and denominator.
void fs_compact(FractionSum& s);

/// Rewrites the sum in the coordinates u = B x. Throws SingularMatrix.
FractionSum change_basis(const FractionSum& f, const Matrix& B);

/// Exact equality as functions (common-denominator comparison per exponent).
bool fraction_sum_equal(const FractionSum& a, const FractionSum& b);

/// Substitutes zero for the infinitesimal regulator.
FractionSum limit_at_zero(const FractionSum& f);

/// Evaluates the rational data at a coordinate point (plus regulator value),
/// grouping by the exponent value lambda(point), which stays a formal symbol:
/// the result maps each distinct exponent value to the accumulated rational
/// part. Returns nullopt when some denominator factor vanishes at the point.
std::optional<std::map<Rational, Rational>> fs_eval_groups(const FractionSum& s,
                                                           const std::vector<Rational>& coords,
                                                           const Rational& eps_value);

struct DecomposeResult {
  FractionSum generating;
  FractionSum nongenerating;
};

/// Splits into a part whose terms each have denominator projections that are
/// independent and span the distinguished block, and a complementary part
/// whose terms have non-spanning projections.
DecomposeResult decompose_generating(const FractionSum& f);

}  // namespace jk
