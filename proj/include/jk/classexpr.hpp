#pragma once

#include <string>

#include "jk/polynomial.hpp"

namespace jk {

/// Parses a cohomology-class expression over n points: identifiers C1..Cn
/// (elementary symmetric in tau_1..tau_n) and sigma, rational literals "p/q",
/// operators + - * ^ and parentheses, no implicit multiplication. The result
/// lives in n+2 slots (tau_1..tau_n, sigma, regulator).
Polynomial parse_class_expr(const std::string& src, int n);

}  // namespace jk
