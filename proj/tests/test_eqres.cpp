#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <optional>
#include <vector>

#include "doctest.h"
#include "jk/eqres.hpp"
#include "jk/errors.hpp"
#include "oracle.hpp"
#include "toydata.hpp"

using namespace jk;
using jktest::make_sum;
using jktest::make_term;

namespace {

Covector cv(std::vector<long> xs) {
  Covector v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

template <typename F>
std::optional<errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const jk_error& e) {
    return e.code();
  }
  return std::nullopt;
}

FractionSum constant_sum(int dim, const Rational& c, std::optional<int> split) {
  FractionSum s = fs_make(dim, split);
  if (c != 0) fs_add_term(s, make_term(dim, c, zero_covector(dim), {}));
  return s;
}

// e^{z}/(z(z+s)) over (z, s) with the one-dimensional leading block.
FractionSum pole_pair() {
  return make_sum(2, {make_term(2, 1, cv({1, 0}), {{cv({1, 0}), 1}, {cv({1, 1}), 1}})},
                  1);
}

}  // namespace

TEST_CASE("enumerate_poles finds the leading-block spans") {
  OrderedBasis std2 = standard_basis(2);
  auto poles = enumerate_poles(pole_pair(), std2, 1);
  REQUIRE(poles.size() == 2);
  // Canonical spans are reduced rows.
  Matrix spans;
  for (const auto& p : poles) {
    REQUIRE(p.span.size() == 1);
    spans.push_back(p.span[0]);
  }
  CHECK(((spans[0] == cv({1, 0}) && spans[1] == cv({1, 1})) ||
         (spans[0] == cv({1, 1}) && spans[1] == cv({1, 0}))));

  FractionSum trailing = make_sum(2, {make_term(2, 1, cv({0, 0}), {{cv({0, 1}), 2}})}, 1);
  CHECK(enumerate_poles(trailing, std2, 1).empty());
}

TEST_CASE("enumerate_poles deduplicates parallel denominators") {
  FractionSum f = make_sum(2,
                           {make_term(2, 1, cv({0, 0}), {{cv({1, 1}), 1}}),
                            make_term(2, 1, cv({1, 0}), {{cv({2, 2}), 1}})},
                           1);
  auto poles = enumerate_poles(f, standard_basis(2), 1);
  CHECK(poles.size() == 1);
}

TEST_CASE("enumerate_poles walks subsets under a two-dimensional block") {
  FractionSum f = make_sum(
      3,
      {make_term(3, 1, cv({0, 0, 0}),
                 {{cv({1, 0, 0}), 1}, {cv({0, 1, 0}), 1}, {cv({1, 1, 1}), 1}})},
      2);
  auto poles = enumerate_poles(f, standard_basis(3), 2);
  CHECK(poles.size() == 3);
  for (const auto& p : poles) CHECK(p.span.size() == 2);
  CHECK(thrown_code([&] { enumerate_poles(f, standard_basis(3), 4); }) ==
        errc::dimension_mismatch);
}

TEST_CASE("induced_basis normalizes the greedy column choice") {
  OrderedBasis std2 = standard_basis(2);
  OrderedBasis v = induced_basis({cv({1, 1})}, std2, 1);
  REQUIRE(v.dim() == 1);
  CHECK(v.vectors[0] == cv({1, 1}));

  OrderedBasis std3 = standard_basis(3);
  OrderedBasis w = induced_basis({cv({1, 0, 0}), cv({0, 1, 0})}, std3, 2);
  REQUIRE(w.dim() == 2);
  CHECK(w.vectors[0] == cv({1, 0, 0}));
  CHECK(w.vectors[1] == cv({0, 1, 0}));
}

TEST_CASE("induced_basis of a skew plane in adapted coordinates") {
  // Ambient (tau1, tau2, sigma); the frame lists sigma first.
  OrderedBasis x;
  x.vectors = {cv({0, 0, 1}), cv({1, 0, 0}), cv({0, 1, 0})};
  Matrix gens = {cv({1, 0, 1}), cv({-1, 1, 1})};
  OrderedBasis v = induced_basis(gens, x, 2);
  REQUIRE(v.dim() == 2);
  CHECK(v.vectors[0] == Covector{Rational(0), Rational(1, 2), Rational(1)});
  CHECK(v.vectors[1] == Covector{Rational(1), Rational(-1, 2), Rational(0)});
  // The picked expansion columns carry the identity.
  CHECK(to_basis_coords(v.vectors[0], x) ==
        Covector{Rational(1), Rational(0), Rational(1, 2)});
  CHECK(to_basis_coords(v.vectors[1], x) ==
        Covector{Rational(0), Rational(1), Rational(-1, 2)});
  // Both rows stay inside the generated plane.
  Matrix plane = gens;
  CHECK(in_span(plane, v.vectors[0]));
  CHECK(in_span(plane, v.vectors[1]));
  CHECK(thrown_code([&] { induced_basis({cv({1, 0, 0}), cv({2, 0, 0})}, x, 2); }) ==
        errc::degenerate_projection);
}

TEST_CASE("eq_res reproduces the two-pole interval value") {
  FractionSum expected =
      make_sum(2,
               {make_term(2, 1, cv({0, 0}), {{cv({0, 1}), 1}}),
                make_term(2, -1, cv({0, -1}), {{cv({0, 1}), 1}})},
               1);
  FractionSum got = eq_res(pole_pair(), standard_basis(2), 1);
  CHECK(fraction_sum_equal(got, expected));
}

TEST_CASE("eq_res is the sum of its per-pole contributions") {
  OrderedBasis std2 = standard_basis(2);
  FractionSum f = pole_pair();
  auto poles = enumerate_poles(f, std2, 1);
  FractionSum total = fs_make(2, 1);
  for (const auto& p : poles) total = fs_add(total, eq_res_at_pole(f, std2, 1, p));
  CHECK(fraction_sum_equal(total, eq_res(f, std2, 1)));
}

TEST_CASE("eq_res vanishes without leading-block poles") {
  FractionSum f = make_sum(2, {make_term(2, 1, cv({0, 1}), {{cv({0, 1}), 2}})}, 1);
  CHECK(eq_res(f, standard_basis(2), 1).terms.empty());
}

TEST_CASE("eq_res vanishes when the projected exponent leaves the cone") {
  FractionSum f = make_sum(2, {make_term(2, 1, cv({-2, 3}), {{cv({1, 0}), 1}})}, 1);
  CHECK(eq_res(f, standard_basis(2), 1).terms.empty());
}

TEST_CASE("eq_res vanishes on anti-polarized exponents") {
  // lambda = -(z - 2s) polarizes negatively, so each pole gate fails.
  FractionSum f =
      make_sum(2, {make_term(2, 1, cv({-1, 2}), {{cv({1, 0}), 1}, {cv({1, 1}), 1}})}, 1);
  CHECK(eq_res(f, standard_basis(2), 1).terms.empty());
}

TEST_CASE("eq_res of the diagonal two-point data is one in any generic basis") {
  FractionSum f = jktest::diag_sum();
  CHECK(fraction_sum_equal(eq_res(f, standard_basis(2), 1), constant_sum(2, 1, 1)));
  OrderedBasis anti;
  anti.vectors = {cv({-1, 0}), cv({0, 1})};
  CHECK(fraction_sum_equal(eq_res(f, anti, 1), constant_sum(2, 1, 1)));
  rational_stream rng(101);
  for (int trial = 0; trial < 4; ++trial) {
    OrderedBasis b = jktest::random_generic_basis(rng, 2);
    CHECK(fraction_sum_equal(eq_res(f, b, 1), constant_sum(2, 1, 1)));
  }
}

TEST_CASE("regulator perturbations leave the eq_res limit unchanged") {
  for (const Rational& t : {Rational(1), Rational(1, 2)}) {
    FractionSum f = jktest::diag_sum();
    for (auto& term : f.terms) term.exp.pert = {t, 2 * t};
    FractionSum lim = limit_at_zero(eq_res(f, standard_basis(2), 1));
    CHECK(fraction_sum_equal(lim, constant_sum(2, 1, 1)));
  }
}

TEST_CASE("closed_form_eq_res handles the simple-pole model") {
  OrderedBasis std2 = standard_basis(2);
  // lambda = 2(z+s) + 5s.
  PerturbedCovector lam{cv({2, 7}), cv({0, 0})};
  FractionSum expected = make_sum(2, {make_term(2, 1, cv({0, 5}), {})}, 1);
  CHECK(fraction_sum_equal(closed_form_eq_res(lam, {{cv({1, 1}), 1}}, std2, 1), expected));

  // Negative coefficient gates to zero.
  PerturbedCovector neg{cv({-1, 3}), cv({0, 0})};
  CHECK(closed_form_eq_res(neg, {{cv({1, 1}), 1}}, std2, 1).terms.empty());

  // Degenerate leading block gives zero.
  PerturbedCovector any{cv({1, 1}), cv({0, 0})};
  CHECK(closed_form_eq_res(any, {{cv({0, 1}), 1}}, std2, 1).terms.empty());

  // Multiplicity two picks up the linear factor.
  PerturbedCovector lam2{cv({3, 1}), cv({0, 0})};
  FractionSum expected2 = make_sum(2, {make_term(2, 3, cv({0, -2}), {})}, 1);
  CHECK(fraction_sum_equal(closed_form_eq_res(lam2, {{cv({1, 1}), 2}}, std2, 1),
                           expected2));
}

TEST_CASE("closed_form_eq_res agrees with eq_res on random simple poles") {
  rational_stream rng(103);
  int done = 0;
  while (done < 100) {
    int split = 1 + static_cast<int>(rng.integer(0, 1));
    int dim = split + 1 + static_cast<int>(rng.integer(0, 4 - split - 1));
    // Denominator directions with an invertible leading block.
    Matrix alphas;
    {
      Matrix leading = jktest::random_independent_covectors(rng, split, split, -4, 4);
      for (int i = 0; i < split; ++i) {
        Covector v = leading[i];
        for (int j = split; j < dim; ++j) v.push_back(Rational(rng.integer(-4, 4)));
        alphas.push_back(v);
      }
    }
    std::vector<std::pair<Covector, int>> dens;
    for (const auto& a : alphas)
      dens.push_back({a, 1 + static_cast<int>(rng.integer(0, 1))});
    Covector lambda = jktest::random_int_covector(rng, dim, -5, 5, false);
    // Stay off the walls: the exponent must not lie on a span of a proper
    // subset of the pole directions, where the chambered closed form and the
    // tuple enumeration may differ by convention.
    {
      Matrix leading;
      for (const auto& a : alphas) leading.push_back(Covector(a.begin(), a.begin() + split));
      auto coefs = solve_row(leading, Covector(lambda.begin(), lambda.begin() + split));
      bool on_wall = false;
      for (const auto& c : *coefs)
        if (c == 0) on_wall = true;
      if (on_wall) continue;
    }
    FractionSum f = fs_make(dim, split);
    fs_add_term(f, make_term(dim, 1, lambda, dens));
    OrderedBasis x = standard_basis(dim);
    FractionSum via_res = eq_res(f, x, split);
    FractionSum via_form =
        closed_form_eq_res(PerturbedCovector{lambda, zero_covector(dim)},
                           dens, x, split);
    CHECK(fraction_sum_equal(via_res, via_form));
    ++done;
  }
}

TEST_CASE("eq_res leaves only trailing-block data") {
  FractionSum r = eq_res(pole_pair(), standard_basis(2), 1);
  for (const auto& t : r.terms) {
    CHECK(t.exp.base[0] == 0);
    CHECK(t.exp.pert[0] == 0);
    for (const auto& d : t.den) CHECK(d.vec[0] == 0);
  }
}
