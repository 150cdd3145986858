#include "jk/locint.hpp"

#include <set>

#include "jk/eqres.hpp"
#include "jk/rng.hpp"

namespace jk {

namespace {

Rational dot(const Covector& a, const Covector& b) {
  Rational r(0);
  for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

void require_dim(const Covector& v, int dim, const char* what) {
  if (static_cast<int>(v.size()) != dim)
    throw jk_error(errc::dimension_mismatch, std::string(what) + " has wrong dimension");
}

// Enumerate k-subsets of {0,..,m-1}, invoking fn on each index set.
template <typename Fn>
void for_each_subset(size_t m, size_t k, Fn&& fn) {
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return;
  while (true) {
    fn(idx);
    size_t i = k;
    while (i > 0 && idx[i - 1] == m - (k - i) - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

FractionSum formal_integral(const FixedPointSet& data, const Polynomial& alpha,
                            const Covector& level) {
  FractionSum out = fs_make(data.dim, data.split);
  require_dim(level, data.dim, "level");
  if (alpha.nvars != data.dim + 1)
    throw jk_error(errc::dimension_mismatch, "class polynomial has wrong variable count");
  for (const auto& p : data.points) {
    require_dim(p.moment, data.dim, "moment");
    if (sgn(p.mult) <= 0)
      throw jk_error(errc::zero_denominator_factor, "fixed-point multiplicity must be positive");
    Fraction f;
    f.exp.base = sub(level, p.moment);
    f.exp.pert = zero_covector(data.dim);
    Polynomial cls = alpha;
    if (p.subst) cls = poly_subst_linear(cls, *p.subst, data.dim);
    f.num = poly_scale(Rational(1) / p.mult, poly_mul(cls, p.numerator));
    for (const auto& w : p.weights) {
      require_dim(w, data.dim, "weight");
      frac_mul_den(f, w, 1);
    }
    fs_add_term(out, std::move(f));
  }
  return out;
}

void check_admissible(const FixedPointSet& data, const GroupData& group,
                      const OrderedBasis& x) {
  if (is_zero(group.gamma)) throw jk_error(errc::zero_vector, "gamma must be nonzero");
  require_dim(group.gamma, data.dim, "gamma");
  if (static_cast<int>(x.dim()) != data.dim)
    throw jk_error(errc::dimension_mismatch, "basis has wrong dimension");
  for (const auto& p : data.points)
    for (const auto& w : p.weights) {
      auto [polarized, sign] = polarize(w, x);
      (void)sign;
      if (sgn(dot(polarized, group.gamma)) < 0)
        throw jk_error(errc::inadmissible_polarization,
                       "basis polarizes a weight against the distinguished direction");
    }
}

Covector perturbation_direction(const FixedPointSet& data, int rank_t) {
  if (rank_t < 1 || rank_t > data.dim)
    throw jk_error(errc::dimension_mismatch, "invalid leading block size");
  // Distinct nonzero projections of the weights to the leading block.
  std::set<Covector> seen;
  Matrix projections;
  for (const auto& p : data.points)
    for (const auto& w : p.weights) {
      require_dim(w, data.dim, "weight");
      Covector pr(w.begin(), w.begin() + rank_t);
      if (!is_zero(pr) && seen.insert(pr).second) projections.push_back(pr);
    }
  size_t k = static_cast<size_t>(rank_t) - 1;
  if (projections.size() < k) k = projections.size();
  rational_stream stream(global_seed());
  for (int attempt = 0; attempt < 256; ++attempt) {
    Covector rho = zero_covector(data.dim);
    for (int i = 0; i < rank_t; ++i) {
      Rational q(stream.integer(1, 97), stream.integer(101, 199));
      q.canonicalize();
      rho[i] = q;
    }
    // Positive coordinates select a fixed chamber; the span test makes every
    // cone-membership decision strict.
    bool generic = true;
    for_each_subset(projections.size(), k, [&](const std::vector<size_t>& idx) {
      if (!generic) return;
      Matrix rows;
      for (size_t j : idx) rows.push_back(projections[j]);
      Covector rho_lead(rho.begin(), rho.begin() + rank_t);
      if (in_span(rows, rho_lead)) generic = false;
    });
    if (generic) return rho;
  }
  throw jk_error(errc::degenerate_projection,
                 "failed to find a generic perturbation direction");
}

namespace {

ResidueValue run_driver(const FixedPointSet& data, const Polynomial& alpha,
                        const GroupData& group, const OrderedBasis& x, bool nonabelian,
                        bool hyperkahler) {
  if (!data.split)
    throw jk_error(errc::dimension_mismatch, "quotient drivers require a split");
  int split = *data.split;
  if (group.rank_t != split)
    throw jk_error(errc::dimension_mismatch, "group rank does not match the split");
  if (group.weyl_order < 1)
    throw jk_error(errc::dimension_mismatch, "weyl_order must be positive");
  check_admissible(data, group, x);
  if (nonabelian && group.weyl_order > 1 && !poly_symmetric_in_first(alpha, split))
    throw jk_error(errc::non_symmetric_class,
                   "class must be symmetric in the leading coordinates");
  if (hyperkahler)
    for (const auto& w : group.complex_weights) {
      require_dim(w, data.dim, "complex weight");
      bool trailing_zero = true;
      for (int i = split; i < data.dim; ++i)
        if (sgn(w[i]) != 0) trailing_zero = false;
      if (trailing_zero)
        throw jk_error(errc::hypothesis_violated,
                       "complex weight has zero trailing block");
    }

  FractionSum f = formal_integral(data, alpha, group.level);
  Polynomial factor = poly_const(data.dim + 1, Rational(1, group.weyl_order));
  if (nonabelian)
    for (const auto& r : group.roots) {
      require_dim(r, data.dim, "root");
      factor = poly_mul(factor, poly_linear(r));
    }
  if (hyperkahler)
    for (const auto& w : group.complex_weights) factor = poly_mul(factor, poly_linear(w));
  Fraction pref = frac_one(data.dim);
  pref.num = factor;
  f = fs_mul_frac(f, pref);

  if (nonabelian) {
    Covector rho = perturbation_direction(data, split);
    for (auto& term : f.terms) term.exp.pert = add(term.exp.pert, rho);
  }
  return limit_at_zero(eq_res(f, x, split));
}

}  // namespace

ResidueValue jk_quotient_abelian(const FixedPointSet& data, const Polynomial& alpha,
                                 const GroupData& group, const OrderedBasis& x) {
  return run_driver(data, alpha, group, x, false, false);
}

ResidueValue jk_quotient_nonabelian(const FixedPointSet& data, const Polynomial& alpha,
                                    const GroupData& group, const OrderedBasis& x) {
  return run_driver(data, alpha, group, x, true, false);
}

ResidueValue hk_quotient(const FixedPointSet& data, const Polynomial& alpha,
                         const GroupData& group, const OrderedBasis& x) {
  return run_driver(data, alpha, group, x, true, true);
}

}  // namespace jk
