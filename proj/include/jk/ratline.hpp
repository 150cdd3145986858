#pragma once

#include <optional>
#include <utility>

#include "jk/linalg.hpp"

namespace jk {

/// Ordered basis of the coordinate space: rows are the basis covectors in
/// ambient coordinates. An optional frame declares which rows of the ambient
/// lattice are orthonormal (defaults to the standard frame).
struct OrderedBasis {
  Matrix vectors;
  std::optional<Matrix> frame;

  size_t dim() const { return vectors.size(); }
};

inline OrderedBasis standard_basis(size_t n) { return OrderedBasis{identity_matrix(n), std::nullopt}; }

/// Coefficients of alpha over the basis rows: a with a · X = alpha.
Covector to_basis_coords(const Covector& alpha, const OrderedBasis& basis);

/// Polarization: flips alpha so its first nonzero basis coefficient is
/// positive. Returns the (possibly negated) ambient covector and the sign.
std::pair<Covector, int> polarize(const Covector& alpha, const OrderedBasis& basis);

/// Component of alpha in <x_{k+1},...,x_dim> along <beta_1,...,beta_k>:
/// writes alpha = sum c_i beta_i + tail with tail supported on the last
/// dim - k basis coordinates and returns tail (ambient coordinates).
Covector project_along(const Covector& alpha, const Matrix& betas, const OrderedBasis& basis,
                       size_t k);

/// Exact membership of point in the closed cone spanned by generators.
/// Empty generator list means the cone {0}.
bool cone_contains(const Matrix& generators, const Covector& point);

/// True when point - theta * (sum of generators) stays in the cone for some
/// theta > 0 (relative-interior test used by regularity checks).
bool cone_contains_interior(const Matrix& generators, const Covector& point);

/// 1/|det(X F^{-1})| with X the basis rows and F the declared frame.
Rational gram_factor(const OrderedBasis& basis);

}  // namespace jk
