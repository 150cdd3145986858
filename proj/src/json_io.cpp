#include "jk/json_io.hpp"

#include <string>
#include <utility>

#include "jk/errors.hpp"

namespace jk {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw jk_error(errc::parse_error, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

long int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string("expected an integer for ") + what);
  return j.get<long>();
}

}  // namespace

Json rational_to_json(const Rational& q) { return rational_to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected a rational as \"p/q\" string or integer");
}

Json covector_to_json(const Covector& v) {
  Json out = Json::array();
  for (const Rational& c : v) out.push_back(rational_to_json(c));
  return out;
}

Covector covector_from_json(const Json& j, int dim) {
  if (!j.is_array()) bad("expected an array of rationals");
  if (dim >= 0 && static_cast<int>(j.size()) != dim)
    bad("covector has " + std::to_string(j.size()) + " entries, expected " +
        std::to_string(dim));
  Covector v;
  for (const Json& e : j) v.push_back(rational_from_json(e));
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (const Covector& row : m) out.push_back(covector_to_json(row));
  return out;
}

Matrix matrix_from_json(const Json& j, int dim) {
  if (!j.is_array()) bad("expected an array of covectors");
  Matrix m;
  for (const Json& row : j) m.push_back(covector_from_json(row, dim));
  return m;
}

Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& [exps, c] : p.terms) {
    Json mono = Json::object();
    mono["exps"] = exps;
    mono["c"] = rational_to_json(c);
    out.push_back(std::move(mono));
  }
  return out;
}

Polynomial polynomial_from_json(const Json& j, int nvars) {
  if (!j.is_array()) bad("expected an array of monomials");
  Polynomial p = poly_zero(nvars);
  for (const Json& mono : j) {
    const Json& je = field(mono, "exps");
    if (!je.is_array()) bad("monomial exponents must be an array");
    std::vector<int> exps;
    for (const Json& e : je) exps.push_back(static_cast<int>(int_from_json(e, "exponent")));
    // The regulator slot may be omitted on input.
    if (static_cast<int>(exps.size()) == nvars - 1) exps.push_back(0);
    if (static_cast<int>(exps.size()) != nvars)
      bad("monomial has " + std::to_string(exps.size()) + " exponents, expected " +
          std::to_string(nvars));
    Rational c = rational_from_json(field(mono, "c"));
    if (c != 0) p.terms[std::move(exps)] += c;
  }
  for (auto it = p.terms.begin(); it != p.terms.end();)
    it = it->second == 0 ? p.terms.erase(it) : std::next(it);
  return p;
}

Json fraction_sum_to_json(const FractionSum& s) {
  Json out = Json::object();
  out["dim"] = s.dim;
  if (s.split) out["split"] = *s.split;
  Json terms = Json::array();
  for (const Fraction& t : s.terms) {
    Json jt = Json::object();
    jt["num"] = polynomial_to_json(t.num);
    jt["exp"] = Json{{"base", covector_to_json(t.exp.base)},
                     {"pert", covector_to_json(t.exp.pert)}};
    Json den = Json::array();
    for (const DenFactor& d : t.den)
      den.push_back(Json{{"vec", covector_to_json(d.vec)}, {"mult", d.mult}});
    jt["den"] = std::move(den);
    terms.push_back(std::move(jt));
  }
  out["terms"] = std::move(terms);
  return out;
}

FractionSum fraction_sum_from_json(const Json& j) {
  int dim = static_cast<int>(int_from_json(field(j, "dim"), "dim"));
  if (dim < 0) bad("negative dimension");
  std::optional<int> split;
  if (j.contains("split") && !j.at("split").is_null())
    split = static_cast<int>(int_from_json(j.at("split"), "split"));
  FractionSum s = fs_make(dim, split);
  if (!j.contains("terms")) return s;
  const Json& terms = j.at("terms");
  if (!terms.is_array()) bad("'terms' must be an array");
  for (const Json& jt : terms) {
    Fraction f = frac_one(dim);
    if (jt.contains("num")) f.num = polynomial_from_json(jt.at("num"), dim + 1);
    if (jt.contains("exp")) {
      const Json& je = jt.at("exp");
      if (je.contains("base")) f.exp.base = covector_from_json(je.at("base"), dim);
      if (je.contains("pert")) f.exp.pert = covector_from_json(je.at("pert"), dim);
    }
    if (jt.contains("den")) {
      const Json& jd = jt.at("den");
      if (!jd.is_array()) bad("'den' must be an array");
      for (const Json& d : jd) {
        Covector vec = covector_from_json(field(d, "vec"), dim);
        int mult = 1;
        if (d.contains("mult")) mult = static_cast<int>(int_from_json(d.at("mult"), "mult"));
        if (mult < 1) bad("denominator multiplicity must be positive");
        frac_mul_den(f, vec, mult);
      }
    }
    fs_add_term(s, std::move(f));
  }
  return s;
}

Json basis_to_json(const OrderedBasis& b) {
  Json out = Json::object();
  out["vectors"] = matrix_to_json(b.vectors);
  if (b.frame) out["frame"] = matrix_to_json(*b.frame);
  return out;
}

OrderedBasis basis_from_json(const Json& j, int dim) {
  OrderedBasis b;
  if (j.is_array()) {
    b.vectors = matrix_from_json(j, dim);
  } else {
    b.vectors = matrix_from_json(field(j, "vectors"), dim);
    if (j.contains("frame") && !j.at("frame").is_null())
      b.frame = matrix_from_json(j.at("frame"), dim);
  }
  if (dim >= 0 && static_cast<int>(b.vectors.size()) != dim)
    bad("basis has " + std::to_string(b.vectors.size()) + " rows, expected " +
        std::to_string(dim));
  return b;
}

FixedPointSet points_from_json(const Json& j) {
  FixedPointSet set;
  set.dim = static_cast<int>(int_from_json(field(j, "dim"), "dim"));
  if (set.dim < 0) bad("negative dimension");
  if (j.contains("split") && !j.at("split").is_null())
    set.split = static_cast<int>(int_from_json(j.at("split"), "split"));
  const Json& pts = field(j, "points");
  if (!pts.is_array()) bad("'points' must be an array");
  for (const Json& jp : pts) {
    FixedPointDatum p;
    if (jp.contains("name")) {
      if (!jp.at("name").is_string()) bad("point name must be a string");
      p.name = jp.at("name").get<std::string>();
    }
    p.moment = covector_from_json(field(jp, "moment"), set.dim);
    p.weights = matrix_from_json(field(jp, "weights"), set.dim);
    if (jp.contains("num"))
      p.numerator = polynomial_from_json(jp.at("num"), set.dim + 1);
    else
      p.numerator = poly_const(set.dim + 1, Rational(1));
    if (jp.contains("mult")) p.mult = rational_from_json(jp.at("mult"));
    if (jp.contains("subst") && !jp.at("subst").is_null())
      p.subst = matrix_from_json(jp.at("subst"), -1);
    set.points.push_back(std::move(p));
  }
  return set;
}

GroupData group_from_json(const Json& j, int dim) {
  GroupData g;
  if (j.contains("rank_t")) {
    g.rank_t = static_cast<int>(int_from_json(j.at("rank_t"), "rank_t"));
    if (g.rank_t < 0) bad("negative rank");
  } else {
    g.rank_t = -1;  // caller defaults it from the fixed-point data
  }
  if (j.contains("roots")) g.roots = matrix_from_json(j.at("roots"), dim);
  if (j.contains("complex_weights"))
    g.complex_weights = matrix_from_json(j.at("complex_weights"), dim);
  if (j.contains("weyl_order"))
    g.weyl_order = int_from_json(j.at("weyl_order"), "weyl_order");
  if (g.weyl_order < 1) bad("Weyl order must be positive");
  g.gamma = covector_from_json(field(j, "gamma"), dim);
  if (j.contains("level"))
    g.level = covector_from_json(j.at("level"), dim);
  else
    g.level = Covector(dim, Rational(0));
  return g;
}

Json sigma_value_to_json(const SigmaValue& v) {
  auto mono = [](int k, const Rational& c) {
    return Json{{"coeff", rational_to_string(c)}, {"sigma_exp", k}};
  };
  if (v.is_zero()) return mono(0, Rational(0));
  if (v.is_monomial()) {
    const auto& [k, c] = *v.terms.begin();
    return mono(k, c);
  }
  Json terms = Json::array();
  for (const auto& [k, c] : v.terms) terms.push_back(mono(k, c));
  return Json{{"terms", std::move(terms)}};
}

Json json_parse(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON document");
  return j;
}

}  // namespace jk
