#include "jkres.h"

#include <cstring>
#include <new>
#include <string>

#include "jk/classexpr.hpp"
#include "jk/errors.hpp"
#include "jk/hilb.hpp"
#include "jk/json_io.hpp"
#include "jk/locint.hpp"
#include "jk/parallel.hpp"
#include "jk/residue.hpp"
#include "jk/rng.hpp"

struct jkres_fraction_sum {
  jk::FractionSum value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body, mapping exceptions onto status codes; parse failures are
// JKRES_EPARSE, precondition failures JKRES_EPRECOND.
template <typename Fn>
int guarded(Fn&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const jk::jk_error& e) {
    g_last_error = e.what();
    return e.code() == jk::errc::parse_error ? JKRES_EPARSE : JKRES_EPRECOND;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return JKRES_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return JKRES_EINTERNAL;
  }
}

int require(bool ok, const char* msg) {
  if (ok) return JKRES_OK;
  g_last_error = msg;
  return JKRES_EPARSE;
}

int emit_json(const jk::Json& j, char** out) {
  char* s = dup_string(j.dump());
  if (!s) {
    g_last_error = "allocation failure";
    return JKRES_EINTERNAL;
  }
  *out = s;
  return JKRES_OK;
}

}  // namespace

extern "C" {

const char* jkres_version(void) { return "1.0.0"; }

const char* jkres_last_error(void) { return g_last_error.c_str(); }

void jkres_string_free(char* s) { delete[] s; }

void jkres_set_seed(uint64_t seed) { jk::set_global_seed(seed); }

void jkres_set_threads(int threads) { jk::set_thread_count(threads); }

int jkres_fraction_parse(const char* json, jkres_fraction_sum** out) {
  if (int rc = require(json && out, "null argument")) return rc;
  return guarded([&] {
    auto handle = new jkres_fraction_sum{jk::fraction_sum_from_json(jk::json_parse(json))};
    *out = handle;
    return JKRES_OK;
  });
}

int jkres_fraction_dump(const jkres_fraction_sum* f, char** json_out) {
  if (int rc = require(f && json_out, "null argument")) return rc;
  return guarded([&] { return emit_json(jk::fraction_sum_to_json(f->value), json_out); });
}

int jkres_fraction_equal(const jkres_fraction_sum* a, const jkres_fraction_sum* b,
                         int* equal_out) {
  if (int rc = require(a && b && equal_out, "null argument")) return rc;
  return guarded([&] {
    *equal_out = jk::fraction_sum_equal(a->value, b->value) ? 1 : 0;
    return JKRES_OK;
  });
}

void jkres_fraction_free(jkres_fraction_sum* f) { delete f; }

int jkres_jk_res(const jkres_fraction_sum* f, const char* basis_json,
                 jkres_fraction_sum** result) {
  if (int rc = require(f && basis_json && result, "null argument")) return rc;
  return guarded([&] {
    jk::OrderedBasis basis =
        jk::basis_from_json(jk::json_parse(basis_json), f->value.dim);
    *result = new jkres_fraction_sum{jk::jk_res(f->value, basis)};
    return JKRES_OK;
  });
}

int jkres_eq_res(const jkres_fraction_sum* f, const char* basis_json, int split,
                 jkres_fraction_sum** result) {
  if (int rc = require(f && basis_json && result, "null argument")) return rc;
  return guarded([&] {
    jk::OrderedBasis basis =
        jk::basis_from_json(jk::json_parse(basis_json), f->value.dim);
    *result = new jkres_fraction_sum{jk::eq_res(f->value, basis, split)};
    return JKRES_OK;
  });
}

int jkres_integrate(const char* points_json, const char* group_json, const char* mode,
                    char** result_json) {
  if (int rc = require(points_json && group_json && mode && result_json, "null argument"))
    return rc;
  return guarded([&] {
    jk::FixedPointSet points = jk::points_from_json(jk::json_parse(points_json));
    jk::GroupData group = jk::group_from_json(jk::json_parse(group_json), points.dim);
    if (group.rank_t < 0) {
      if (!points.split)
        throw jk::jk_error(jk::errc::dimension_mismatch,
                           "group rank is not given and the point data has no split");
      group.rank_t = *points.split;
    }
    std::string m = mode;

    jk::OrderedBasis x;
    x.vectors.resize(points.dim, jk::Covector(points.dim, jk::Rational(0)));
    // Residue order: the trailing block first, then the distinguished block.
    int tail = points.dim - group.rank_t;
    if (tail < 0)
      throw jk::jk_error(jk::errc::dimension_mismatch,
                         "group rank exceeds the ambient dimension");
    for (int i = 0; i < tail; ++i) x.vectors[i][group.rank_t + i] = 1;
    for (int i = 0; i < group.rank_t; ++i) x.vectors[tail + i][i] = 1;

    jk::ResidueValue value;
    jk::Json meta = jk::Json::object();
    meta["vol_T"] = "1";
    meta["mode"] = m;
    meta["basis"] = jk::matrix_to_json(x.vectors);
    if (m == "abelian") {
      value = jk::jk_quotient_abelian(points, jk::poly_const(points.dim + 1, 1), group, x);
    } else if (m == "nonabelian" || m == "hyperkahler") {
      jk::Covector rho = jk::perturbation_direction(points, group.rank_t);
      meta["chamber"] = jk::covector_to_json(rho);
      value = m == "nonabelian"
                  ? jk::jk_quotient_nonabelian(points, jk::poly_const(points.dim + 1, 1),
                                               group, x)
                  : jk::hk_quotient(points, jk::poly_const(points.dim + 1, 1), group, x);
    } else {
      throw jk::jk_error(jk::errc::parse_error, "unknown mode '" + m + "'");
    }
    jk::Json out = jk::Json::object();
    out["value"] = jk::fraction_sum_to_json(value);
    out["metadata"] = std::move(meta);
    return emit_json(out, result_json);
  });
}

int jkres_hilb_integrate(const char* class_expr, int n, int N, const char* method,
                         char** result_json) {
  if (int rc = require(class_expr && method && result_json, "null argument")) return rc;
  return guarded([&] {
    std::string m = method;
    jk::HilbMethod hm;
    if (m == "formula")
      hm = jk::HilbMethod::formula;
    else if (m == "eqres")
      hm = jk::HilbMethod::eqres;
    else if (m == "oracle")
      hm = jk::HilbMethod::oracle;
    else
      throw jk::jk_error(jk::errc::parse_error, "unknown method '" + m + "'");
    jk::Polynomial alpha = jk::parse_class_expr(class_expr, n);
    jk::SigmaValue v = jk::hilb_integrate(alpha, n, N, hm);
    return emit_json(jk::Json{{"value", jk::sigma_value_to_json(v)}}, result_json);
  });
}

int jkres_hilb_kernel(const char* class_expr, int n, int N, int* member_out) {
  if (int rc = require(class_expr && member_out, "null argument")) return rc;
  return guarded([&] {
    jk::Polynomial alpha = jk::parse_class_expr(class_expr, n);
    *member_out = jk::kernel_member(alpha, n, N) ? 1 : 0;
    return JKRES_OK;
  });
}

int jkres_hilb_rank(int n, int N, int degree_bound, int* rank_out) {
  if (int rc = require(rank_out != nullptr, "null argument")) return rc;
  return guarded([&] {
    *rank_out = jk::evaluation_rank(n, N, degree_bound);
    return JKRES_OK;
  });
}

int jkres_hilb_table(int n, int N, char** result_json) {
  if (int rc = require(result_json != nullptr, "null argument")) return rc;
  return guarded([&] {
    jk::Json out = jk::Json::object();
    for (const jk::Partition& lam : jk::partitions(n)) {
      std::vector<long> p = jk::content_vector(lam, N);
      jk::Json jp = jk::Json::array();
      for (long pi : p) jp.push_back(std::to_string(pi));
      jk::Json entry = jk::Json::object();
      entry["p"] = std::move(jp);
      entry["b"] = jk::sigma_value_to_json(jk::b_lambda(lam, N));
      out[jk::partition_name(lam)] = std::move(entry);
    }
    return emit_json(out, result_json);
  });
}

}  // extern "C"
