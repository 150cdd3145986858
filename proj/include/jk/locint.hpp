#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jk/fraction.hpp"
#include "jk/polynomial.hpp"
#include "jk/ratline.hpp"
#include "jk/residue.hpp"

namespace jk {

/// One isolated fixed point of the ambient torus action: its moment value,
/// the isotropy weights of the normal directions, the restriction of the
/// integrand class (a constant or polynomial numerator) and an orbifold
/// multiplicity. `subst` optionally specializes the ambient coordinates of a
/// class multiplied in later (row i = image of coordinate i).
struct FixedPointDatum {
  std::string name;
  Covector moment;
  Matrix weights;
  Polynomial numerator;
  Rational mult = Rational(1);
  std::optional<Matrix> subst;
};

/// A full fixed-point data set together with the ambient dimension and the
/// size of the leading coordinate block that residues are taken in.
struct FixedPointSet {
  int dim = 0;
  std::optional<int> split;
  std::vector<FixedPointDatum> points;
};

/// Group data for the quotient drivers: residues are taken in the first
/// rank_t coordinates; roots and complex_weights multiply the numerator;
/// gamma is the direction of the distinguished circle fixing the chamber of
/// admissible polarizations; level shifts every exponent.
struct GroupData {
  int rank_t = 0;
  Matrix roots;
  Matrix complex_weights;
  long weyl_order = 1;
  Covector gamma;
  Covector level;
};

/// Fixed-point localization sum as a formal fraction sum: one term
/// e^{-moment+level} * numerator / (mult * prod weights) per fixed point.
FractionSum formal_integral(const FixedPointSet& data, const Polynomial& alpha,
                            const Covector& level);

/// Check that the ordered basis x polarizes every isotropy weight to the
/// nonnegative side of gamma; throws InadmissiblePolarization otherwise.
void check_admissible(const FixedPointSet& data, const GroupData& group,
                      const OrderedBasis& x);

/// Deterministic generic perturbation direction supported on the first
/// rank_t coordinates: positive rational coordinates, rejected until they
/// avoid every hyperplane spanned by fewer than rank_t of the distinct
/// leading-block projections of the weights.
Covector perturbation_direction(const FixedPointSet& data, int rank_t);

/// Quotient integration for a torus: residue of the localization sum in the
/// leading coordinates, then the regulator limit.
ResidueValue jk_quotient_abelian(const FixedPointSet& data, const Polynomial& alpha,
                                 const GroupData& group, const OrderedBasis& x);

/// Nonabelian quotient integration: multiplies in the roots, divides by the
/// Weyl order, perturbs the exponent by a generic direction, then proceeds
/// as in the abelian case.
ResidueValue jk_quotient_nonabelian(const FixedPointSet& data, const Polynomial& alpha,
                                    const GroupData& group, const OrderedBasis& x);

/// HyperKahler quotient integration: as the nonabelian driver with the
/// complex weights multiplied in as well; requires every complex weight to
/// have a nonzero trailing block.
ResidueValue hk_quotient(const FixedPointSet& data, const Polynomial& alpha,
                         const GroupData& group, const OrderedBasis& x);

}  // namespace jk
