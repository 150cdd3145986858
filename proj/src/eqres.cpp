#include "jk/eqres.hpp"

#include <algorithm>
#include <set>

#include "jk/errors.hpp"

namespace jk {

namespace {

Covector leading_block(const Covector& v, int split) {
  return Covector(v.begin(), v.begin() + split);
}

// det of the leading-block square matrix of the rows.
Rational leading_det(const Matrix& rows, int split) {
  Matrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(leading_block(r, split));
  return det(m);
}

}  // namespace

OrderedBasis induced_basis(const Matrix& generators, const OrderedBasis& x, int split) {
  size_t q = generators.size();
  size_t dim = x.dim();

  // Generators over the x-coordinates.
  Matrix m;
  m.reserve(q);
  for (const auto& g : generators) m.push_back(to_basis_coords(g, x));

  // Greedy-from-left column choice: the earliest columns of increasing rank
  // minimize the dual index sum.
  std::vector<int> cols;
  Matrix picked(q);
  for (size_t c = 0; c < dim && cols.size() < q; ++c) {
    Matrix trial(q);
    for (size_t i = 0; i < q; ++i) {
      trial[i] = picked[i];
      trial[i].push_back(m[i][c]);
    }
    Matrix probe = trial;
    if (rank(probe) > static_cast<int>(cols.size())) {
      cols.push_back(static_cast<int>(c));
      picked = trial;
    }
  }
  if (cols.size() < q) throw jk_error(errc::degenerate_projection, "generators are dependent");

  auto inv = inverse(picked);
  Matrix v_in_x = matrix_product(*inv, m);

  // Back to ambient covectors.
  OrderedBasis induced;
  induced.vectors.reserve(q);
  for (const auto& row : v_in_x) induced.vectors.push_back(row_times_matrix(row, x.vectors));
  (void)split;
  return induced;
}

std::vector<Pole> enumerate_poles(const FractionSum& f, const OrderedBasis& x, int split) {
  if (split < 0 || split > f.dim)
    throw jk_error(errc::dimension_mismatch, "split block exceeds the dimension");
  std::set<Matrix> seen;
  std::vector<Pole> poles;
  for (const auto& t : f.terms) {
    // Candidate vectors must project nontrivially onto the leading block.
    std::vector<const Covector*> cand;
    for (const auto& d : t.den) {
      if (!is_zero(leading_block(d.vec, split))) cand.push_back(&d.vec);
    }
    if (static_cast<int>(cand.size()) < split) continue;

    std::vector<int> idx;
    auto dfs = [&](auto&& self, size_t start) -> void {
      if (static_cast<int>(idx.size()) == split) {
        Matrix gens;
        for (int i : idx) gens.push_back(*cand[i]);
        if (sgn(leading_det(gens, split)) == 0) return;
        Matrix canon = gens;
        rref(canon);
        if (!seen.insert(canon).second) return;
        Pole p;
        p.span = canon;
        p.generators = gens;
        p.induced = induced_basis(gens, x, split);
        Rational d = leading_det(p.induced.vectors, split);
        p.gram = Rational(1) / abs(d);
        poles.push_back(std::move(p));
        return;
      }
      for (size_t i = start; i < cand.size(); ++i) {
        idx.push_back(static_cast<int>(i));
        self(self, i + 1);
        idx.pop_back();
      }
    };
    dfs(dfs, 0);
  }
  return poles;
}

ResidueValue eq_res_at_pole(const FractionSum& f, const OrderedBasis& x, int split,
                            const Pole& pole) {
  int dim = f.dim;
  if (static_cast<int>(x.dim()) != dim)
    throw jk_error(errc::dimension_mismatch, "basis dimension mismatch");
  // Coordinates adapted to the pole: its induced covectors first, then the
  // trailing coordinate directions. Vectors inside the pole become
  // supported on the leading block, so the positive residue there runs
  // over exactly the in-pole denominator vectors.
  Matrix C = pole.induced.vectors;
  for (int j = split; j < dim; ++j) {
    Covector e = zero_covector(dim);
    e[j] = 1;
    C.push_back(e);
  }
  FractionSum local = change_basis(f, C);
  ResidueValue r = res_plus_active(local, split);
  // The trailing block of the adapted coordinates coincides with the
  // ambient trailing block, so the result needs no conversion back.
  return fs_scale(pole.gram, r);
}

ResidueValue eq_res(const FractionSum& f, const OrderedBasis& x, int split) {
  int dim = f.dim;
  if (static_cast<int>(x.dim()) != dim)
    throw jk_error(errc::dimension_mismatch, "basis dimension mismatch");
  auto poles = enumerate_poles(f, x, split);

  ResidueValue total = fs_make(dim, split);
  for (const auto& pole : poles) total = fs_add(total, eq_res_at_pole(f, x, split, pole));
  fs_compact(total);
  return total;
}

ResidueValue closed_form_eq_res(const PerturbedCovector& lambda,
                                const std::vector<std::pair<Covector, int>>& alphas,
                                const OrderedBasis& x, int split) {
  int dim = static_cast<int>(x.dim());
  if (static_cast<int>(alphas.size()) != split)
    throw jk_error(errc::dimension_mismatch, "need exactly one direction per leading coordinate");
  ResidueValue out = fs_make(dim, split);

  Matrix tilde;
  std::vector<int> signs;
  for (const auto& [vec, mult] : alphas) {
    auto [tv, s] = polarize(vec, x);
    tilde.push_back(tv);
    signs.push_back(s);
    if (mult < 1) throw jk_error(errc::zero_denominator_factor, "multiplicity must be positive");
  }
  Rational d = leading_det(tilde, split);
  if (sgn(d) == 0) return out;  // not a pole

  Matrix proj;
  for (const auto& r : tilde) proj.push_back(leading_block(r, split));
  auto base = solve_row(proj, leading_block(lambda.base, split));
  auto pert = solve_row(proj, leading_block(lambda.pert, split));

  Polynomial num = poly_const(dim + 1, Rational(1) / abs(d));
  PerturbedCovector rest = lambda;
  for (int i = 0; i < split; ++i) {
    Rational b = (*base)[i];
    Rational p = (*pert)[i];
    int s = sgn(b) != 0 ? sgn(b) : sgn(p);
    if (s < 0) return out;  // outside the polarized cone
    int mult = alphas[i].second;
    if (signs[i] < 0 && mult % 2 == 1) num = poly_neg(num);
    num = poly_mul_pair_pow(num, b, p, mult - 1);
    num = poly_scale(Rational(1) / factorial(mult - 1), num);
    rest.base = sub(rest.base, scale(b, tilde[i]));
    rest.pert = sub(rest.pert, scale(p, tilde[i]));
  }
  // rest is the trailing-block part lambda_0; its leading block vanishes by
  // construction of the expansion coefficients.
  Fraction f;
  f.num = num;
  f.exp = rest;
  fs_add_term(out, std::move(f));
  return out;
}

}  // namespace jk
