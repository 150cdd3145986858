#pragma once

#include "json.hpp"

#include "jk/fraction.hpp"
#include "jk/hilb.hpp"
#include "jk/locint.hpp"
#include "jk/ratline.hpp"

namespace jk {

using Json = nlohmann::json;

/// All readers validate shapes and throw jk_error(parse_error) on malformed
/// input; all writers emit canonical rational strings and sorted object keys.

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json covector_to_json(const Covector& v);
Covector covector_from_json(const Json& j, int dim);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, int dim);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, int nvars);

Json fraction_sum_to_json(const FractionSum& s);
FractionSum fraction_sum_from_json(const Json& j);

Json basis_to_json(const OrderedBasis& b);
OrderedBasis basis_from_json(const Json& j, int dim);

FixedPointSet points_from_json(const Json& j);
GroupData group_from_json(const Json& j, int dim);

Json sigma_value_to_json(const SigmaValue& v);

/// Parses a JSON document from text (wraps the library parser so malformed
/// documents surface as parse_error).
Json json_parse(const std::string& text);

}  // namespace jk
