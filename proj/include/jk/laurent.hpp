#pragma once

#include "jk/fraction.hpp"

namespace jk {

/// Truncated iterated Laurent expansion of a fraction under a variable order:
/// listed coordinates come first (earliest dominates), remaining coordinates
/// follow in index order. The flat `series` stores all listed-variable
/// exponents (possibly negative) together with the expanded exponential
/// directions; `exp_rest` keeps the unlisted exponential directions symbolic.
struct LaurentSeries {
  int dim = 0;
  std::vector<int> order;   // listed coordinate indices, earliest first
  std::vector<int> bound;   // per-coordinate inclusive exponent bound
  Polynomial series;        // Laurent polynomial over all coordinates
  PerturbedCovector exp_rest;
};

/// Expands with bounds given per coordinate (vector of length dim).
LaurentSeries expand(const Fraction& f, int dim, const std::vector<int>& order,
                     const std::vector<int>& bound);

/// Convenience: one bound applied to every coordinate.
LaurentSeries expand(const Fraction& f, int dim, const std::vector<int>& order, int bound);

/// Coefficient of the given exponent tuple over the listed variables, as a
/// polynomial in the remaining variables (listed slots zeroed).
Polynomial laurent_coefficient(const LaurentSeries& ls, const std::vector<int>& exps);

}  // namespace jk
