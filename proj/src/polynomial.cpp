#include "jk/polynomial.hpp"

#include "jk/errors.hpp"

namespace jk {

namespace {

void insert_term(Polynomial& p, const std::vector<int>& key, const Rational& c) {
  if (sgn(c) == 0) return;
  auto it = p.terms.find(key);
  if (it == p.terms.end()) {
    p.terms.emplace(key, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) p.terms.erase(it);
  }
}

}  // namespace

Polynomial poly_zero(int nvars) {
  Polynomial p;
  p.nvars = nvars;
  return p;
}

Polynomial poly_const(int nvars, const Rational& c) {
  Polynomial p = poly_zero(nvars);
  insert_term(p, std::vector<int>(nvars, 0), c);
  return p;
}

Polynomial poly_var(int nvars, int i, int power) {
  Polynomial p = poly_zero(nvars);
  std::vector<int> key(nvars, 0);
  key[i] = power;
  insert_term(p, key, Rational(1));
  return p;
}

Polynomial poly_linear(const Covector& cov, const Rational& eps_coeff) {
  int nvars = static_cast<int>(cov.size()) + 1;
  Polynomial p = poly_zero(nvars);
  for (size_t i = 0; i < cov.size(); ++i) {
    std::vector<int> key(nvars, 0);
    key[i] = 1;
    insert_term(p, key, cov[i]);
  }
  std::vector<int> key(nvars, 0);
  key[nvars - 1] = 1;
  insert_term(p, key, eps_coeff);
  return p;
}

void poly_add_inplace(Polynomial& p, const Polynomial& q) {
  if (p.nvars != q.nvars) throw jk_error(errc::dimension_mismatch, "polynomial variable counts differ");
  for (const auto& [key, c] : q.terms) insert_term(p, key, c);
}

Polynomial poly_add(const Polynomial& p, const Polynomial& q) {
  Polynomial r = p;
  poly_add_inplace(r, q);
  return r;
}

Polynomial poly_sub(const Polynomial& p, const Polynomial& q) { return poly_add(p, poly_neg(q)); }

Polynomial poly_neg(const Polynomial& p) {
  Polynomial r = poly_zero(p.nvars);
  for (const auto& [key, c] : p.terms) r.terms.emplace(key, -c);
  return r;
}

Polynomial poly_scale(const Rational& c, const Polynomial& p) {
  Polynomial r = poly_zero(p.nvars);
  if (sgn(c) == 0) return r;
  for (const auto& [key, v] : p.terms) r.terms.emplace(key, c * v);
  return r;
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
  if (p.nvars != q.nvars) throw jk_error(errc::dimension_mismatch, "polynomial variable counts differ");
  Polynomial r = poly_zero(p.nvars);
  std::vector<int> key(p.nvars);
  for (const auto& [ka, ca] : p.terms) {
    for (const auto& [kb, cb] : q.terms) {
      for (int i = 0; i < p.nvars; ++i) key[i] = ka[i] + kb[i];
      insert_term(r, key, ca * cb);
    }
  }
  return r;
}

Polynomial poly_pow(const Polynomial& p, long e) {
  if (e < 0) throw jk_error(errc::zero_denominator_factor, "negative polynomial power");
  Polynomial acc = poly_const(p.nvars, Rational(1));
  Polynomial base = p;
  while (e > 0) {
    if (e & 1) acc = poly_mul(acc, base);
    e >>= 1;
    if (e > 0) base = poly_mul(base, base);
  }
  return acc;
}

Polynomial poly_subst_linear(const Polynomial& p, const Matrix& rows, int dim_new) {
  int dim_old = p.nvars - 1;
  if (static_cast<int>(rows.size()) != dim_old)
    throw jk_error(errc::dimension_mismatch, "substitution row count mismatch");
  int nvars_new = dim_new + 1;
  // Precompute linear images of the old coordinates once.
  std::vector<Polynomial> image;
  image.reserve(dim_old);
  for (int i = 0; i < dim_old; ++i) {
    if (static_cast<int>(rows[i].size()) != dim_new)
      throw jk_error(errc::dimension_mismatch, "substitution row length mismatch");
    image.push_back(poly_linear(rows[i]));
  }
  Polynomial result = poly_zero(nvars_new);
  for (const auto& [key, c] : p.terms) {
    Polynomial mono = poly_const(nvars_new, c);
    for (int i = 0; i < dim_old; ++i) {
      if (key[i] == 0) continue;
      mono = poly_mul(mono, poly_pow(image[i], key[i]));
    }
    if (key[dim_old] != 0) mono = poly_mul(mono, poly_var(nvars_new, dim_new, key[dim_old]));
    poly_add_inplace(result, mono);
  }
  return result;
}

Rational poly_eval(const Polynomial& p, const std::vector<Rational>& values) {
  if (static_cast<int>(values.size()) != p.nvars)
    throw jk_error(errc::dimension_mismatch, "evaluation point length mismatch");
  Rational total(0);
  for (const auto& [key, c] : p.terms) {
    Rational t = c;
    for (int i = 0; i < p.nvars; ++i) {
      if (key[i] == 0) continue;
      t *= pow_rational(values[i], key[i]);
    }
    total += t;
  }
  return total;
}

Polynomial poly_eval_coords(const Polynomial& p, const std::vector<Rational>& coord_values) {
  if (static_cast<int>(coord_values.size()) != p.nvars - 1)
    throw jk_error(errc::dimension_mismatch, "coordinate evaluation point length mismatch");
  Polynomial r = poly_zero(p.nvars);
  std::vector<int> key(p.nvars, 0);
  for (const auto& [k, c] : p.terms) {
    Rational t = c;
    for (int i = 0; i + 1 < p.nvars; ++i) {
      if (k[i] == 0) continue;
      t *= pow_rational(coord_values[i], k[i]);
    }
    key[p.nvars - 1] = k[p.nvars - 1];
    insert_term(r, key, t);
  }
  return r;
}

std::map<int, Polynomial> poly_split_by_var(const Polynomial& p, int a) {
  std::map<int, Polynomial> out;
  for (const auto& [key, c] : p.terms) {
    std::vector<int> rest = key;
    int d = rest[a];
    rest[a] = 0;
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, poly_zero(p.nvars)).first;
    insert_term(it->second, rest, c);
  }
  return out;
}

int poly_degree_in(const Polynomial& p, int a) {
  int d = 0;
  for (const auto& [key, c] : p.terms) {
    (void)c;
    d = std::max(d, key[a]);
  }
  return d;
}

Polynomial poly_drop_infinitesimal(const Polynomial& p) {
  Polynomial r = poly_zero(p.nvars);
  for (const auto& [key, c] : p.terms) {
    if (key[p.nvars - 1] != 0) continue;
    insert_term(r, key, c);
  }
  return r;
}

Polynomial poly_mul_pair_pow(const Polynomial& p, const Rational& base, const Rational& pert,
                             long e) {
  Polynomial factor = poly_const(p.nvars, base);
  if (sgn(pert) != 0) {
    std::vector<int> key(p.nvars, 0);
    key[p.nvars - 1] = 1;
    factor.terms[key] = pert;
  }
  return poly_mul(p, poly_pow(factor, e));
}

Polynomial poly_permute(const Polynomial& p, const std::vector<int>& image) {
  Polynomial r = poly_zero(p.nvars);
  for (const auto& [key, c] : p.terms) {
    std::vector<int> nk(p.nvars, 0);
    for (size_t i = 0; i < image.size(); ++i) nk[image[i]] = key[i];
    for (size_t i = image.size(); i < key.size(); ++i) nk[i] = key[i];
    insert_term(r, nk, c);
  }
  return r;
}

bool poly_symmetric_in_first(const Polynomial& p, int n) {
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> image(p.nvars);
    for (int j = 0; j < p.nvars; ++j) image[j] = j;
    std::swap(image[i], image[i + 1]);
    if (!(poly_permute(p, image) == p)) return false;
  }
  return true;
}

}  // namespace jk
