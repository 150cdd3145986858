#pragma once

#include <stdexcept>
#include <string>

namespace jk {

enum class errc {
  zero_vector,
  dimension_mismatch,
  degenerate_projection,
  singular_basis,
  singular_matrix,
  zero_denominator_factor,
  dependent_alphas,
  non_generic_lambda,
  degenerate_tuple,
  discontinuous_limit,
  inadmissible_polarization,
  hypothesis_violated,
  non_symmetric_class,
  invalid_n,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_vector: return "ZeroVector";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::degenerate_projection: return "DegenerateProjection";
    case errc::singular_basis: return "SingularBasis";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::zero_denominator_factor: return "ZeroDenominatorFactor";
    case errc::dependent_alphas: return "DependentAlphas";
    case errc::non_generic_lambda: return "NonGenericLambda";
    case errc::degenerate_tuple: return "DegenerateTuple";
    case errc::discontinuous_limit: return "DiscontinuousLimit";
    case errc::inadmissible_polarization: return "InadmissiblePolarization";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::non_symmetric_class: return "NonSymmetricClass";
    case errc::invalid_n: return "InvalidN";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class jk_error : public std::runtime_error {
 public:
  jk_error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace jk
