#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <utility>
#include <vector>

#include "jk/errors.hpp"
#include "jk/fraction.hpp"
#include "jk/linalg.hpp"
#include "jk/locint.hpp"
#include "jk/polynomial.hpp"
#include "jk/rng.hpp"
#include "oracle.hpp"
#include "toydata.hpp"

using jk::Covector;
using jk::errc;
using jk::FixedPointDatum;
using jk::FixedPointSet;
using jk::FractionSum;
using jk::GroupData;
using jk::Matrix;
using jk::OrderedBasis;
using jk::Polynomial;
using jk::Rational;

namespace {

Covector cv(const std::vector<long>& e) {
  Covector v;
  for (long x : e) v.emplace_back(x);
  return v;
}

template <typename F>
std::optional<errc> thrown_code(F&& body) {
  try {
    body();
  } catch (const jk::jk_error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("formal_integral builds one fraction per fixed point") {
  // The affine plane: a single fixed point at the origin with coordinate
  // weights gives 1/(x1 x2) and a trivial exponent.
  FixedPointSet plane;
  plane.dim = 2;
  plane.points.push_back(
      jktest::make_point("origin", cv({0, 0}), {cv({1, 0}), cv({0, 1})}, 2));
  FractionSum f =
      jk::formal_integral(plane, jk::poly_const(3, 1), jk::zero_covector(2));
  CHECK(jk::fraction_sum_equal(
      f, jktest::make_sum(2, {jktest::make_term(2, 1, cv({0, 0}),
                                                {{cv({1, 0}), 1}, {cv({0, 1}), 1}})})));

  FixedPointSet empty;
  empty.dim = 2;
  CHECK(jk::formal_integral(empty, jk::poly_const(3, 1), jk::zero_covector(2))
            .terms.empty());
}

TEST_CASE("formal_integral matches the hand-built fixture sums") {
  FractionSum sphere = jk::formal_integral(jktest::sphere_points(), jk::poly_const(2, 1),
                                           jk::zero_covector(1));
  CHECK(jk::fraction_sum_equal(sphere, jktest::sphere_sum()));

  FractionSum diag = jk::formal_integral(jktest::diag_points(), jk::poly_const(3, 1),
                                         jk::zero_covector(2));
  CHECK(jk::fraction_sum_equal(diag, jktest::diag_sum()));
  CHECK(diag.split == 1);
}

TEST_CASE("formal_integral level, multiplicity and substitution handling") {
  FixedPointSet s;
  s.dim = 2;
  s.points.push_back(
      jktest::make_point("p", cv({1, 2}), {cv({1, 0}), cv({0, 1})}, 2));
  s.points.back().mult = 3;

  // exponent = level - moment, numerator scaled by 1/mult
  FractionSum f = jk::formal_integral(s, jk::poly_const(3, 1), cv({5, 0}));
  REQUIRE(f.terms.size() == 1);
  CHECK(f.terms[0].exp.base == cv({4, -2}));
  CHECK(jk::is_zero(f.terms[0].exp.pert));
  CHECK(f.terms[0].num == jk::poly_const(3, Rational(1, 3)));

  // the optional substitution specializes the class before it multiplies in
  s.points[0].mult = 1;
  s.points[0].subst = Matrix{cv({0, 1}), cv({0, 1})};
  FractionSum g = jk::formal_integral(s, jk::poly_var(3, 0, 1), cv({0, 0}));
  REQUIRE(g.terms.size() == 1);
  CHECK(g.terms[0].num == jk::poly_var(3, 1, 1));
}

TEST_CASE("formal_integral rejects malformed data") {
  FixedPointSet s = jktest::quotient_points();

  CHECK(thrown_code([&] {
          jk::formal_integral(s, jk::poly_const(2, 1), jk::zero_covector(2));
        }) == errc::dimension_mismatch);
  CHECK(thrown_code([&] {
          jk::formal_integral(s, jk::poly_const(3, 1), jk::zero_covector(1));
        }) == errc::dimension_mismatch);

  FixedPointSet bad_mult = jktest::quotient_points();
  bad_mult.points[0].mult = 0;
  CHECK(thrown_code([&] {
          jk::formal_integral(bad_mult, jk::poly_const(3, 1), jk::zero_covector(2));
        }) == errc::zero_denominator_factor);

  FixedPointSet bad_weight = jktest::quotient_points();
  bad_weight.points[0].weights[0] = cv({1});
  CHECK(thrown_code([&] {
          jk::formal_integral(bad_weight, jk::poly_const(3, 1), jk::zero_covector(2));
        }) == errc::dimension_mismatch);

  FixedPointSet bad_moment = jktest::quotient_points();
  bad_moment.points[0].moment = cv({0});
  CHECK(thrown_code([&] {
          jk::formal_integral(bad_moment, jk::poly_const(3, 1), jk::zero_covector(2));
        }) == errc::dimension_mismatch);
}

TEST_CASE("check_admissible accepts the polarized chamber and rejects its reverse") {
  FixedPointSet data = jktest::quotient_points();
  GroupData group = jktest::quotient_group(1);
  OrderedBasis x = jk::standard_basis(2);
  CHECK_NOTHROW(jk::check_admissible(data, group, x));

  // reversing the first basis vector flips the polarization of (1,0) to the
  // negative side of gamma
  OrderedBasis anti;
  anti.vectors = {cv({-1, 0}), cv({0, 1})};
  CHECK(thrown_code([&] { jk::check_admissible(data, group, anti); }) ==
        errc::inadmissible_polarization);

  GroupData no_gamma = group;
  no_gamma.gamma = jk::zero_covector(2);
  CHECK(thrown_code([&] { jk::check_admissible(data, no_gamma, x); }) ==
        errc::zero_vector);
}

TEST_CASE("perturbation_direction is deterministic, positive and generic") {
  FixedPointSet data;
  data.dim = 3;
  data.split = 2;
  data.points.push_back(jktest::make_point(
      "p", cv({0, 0, 0}),
      {cv({1, 0, 0}), cv({0, 1, 0}), cv({1, 1, 1}), cv({2, 1, 0})}, 3));

  jk::set_global_seed(42);
  Covector rho = jk::perturbation_direction(data, 2);
  jk::set_global_seed(42);
  Covector again = jk::perturbation_direction(data, 2);
  CHECK(rho == again);

  REQUIRE(rho.size() == 3);
  CHECK(rho[0] > 0);
  CHECK(rho[1] > 0);
  CHECK(rho[2] == 0);

  // generic: parallel to none of the leading-block projections of the weights
  for (const auto& p : {cv({1, 0}), cv({0, 1}), cv({1, 1}), cv({2, 1})})
    CHECK(rho[0] * p[1] != rho[1] * p[0]);

  CHECK(thrown_code([&] { jk::perturbation_direction(data, 0); }) ==
        errc::dimension_mismatch);
  CHECK(thrown_code([&] { jk::perturbation_direction(data, 4); }) ==
        errc::dimension_mismatch);
}

TEST_CASE("abelian quotient of the plane matches the two-fixed-point sum") {
  FixedPointSet data = jktest::quotient_points();
  OrderedBasis x = jk::standard_basis(2);
  for (const Rational& xi : {Rational(1), Rational(2), Rational(1, 2)}) {
    FractionSum v =
        jk::jk_quotient_abelian(data, jk::poly_const(3, 1), jktest::quotient_group(xi), x);
    CHECK(jk::fraction_sum_equal(v, jktest::quotient_expected(xi)));
  }
}

TEST_CASE("abelian quotient edge cases") {
  FixedPointSet data = jktest::quotient_points();
  OrderedBasis x = jk::standard_basis(2);

  FractionSum zero =
      jk::jk_quotient_abelian(data, jk::poly_zero(3), jktest::quotient_group(1), x);
  CHECK(zero.terms.empty());

  // a single weight along gamma: one simple pole and an exponential-free value
  FixedPointSet line;
  line.dim = 2;
  line.split = 1;
  line.points.push_back(jktest::make_point("o", cv({0, 0}), {cv({1, 0})}, 2));
  GroupData group = jktest::quotient_group(1);
  FractionSum v = jk::jk_quotient_abelian(line, jk::poly_const(3, 1), group, x);
  CHECK(jk::fraction_sum_equal(
      v, jktest::make_sum(2, {jktest::make_term(2, 1, cv({0, 0}), {})}, 1)));
}

TEST_CASE("level shift multiplies the value by the exponential at the pole") {
  // one weight z+s: the only pole is z = -s, so moving the level from xi to
  // xi' rescales the value by e^{(xi'-xi)} evaluated there.
  FixedPointSet data;
  data.dim = 2;
  data.split = 1;
  data.points.push_back(jktest::make_point("o", cv({0, 0}), {cv({1, 1})}, 2));
  OrderedBasis x = jk::standard_basis(2);

  for (const Rational& a : {Rational(1), Rational(2), Rational(1, 2)}) {
    GroupData group = jktest::quotient_group(a);
    FractionSum v = jk::jk_quotient_abelian(data, jk::poly_const(3, 1), group, x);
    Covector expo = {Rational(0), -a};
    CHECK(jk::fraction_sum_equal(
        v, jktest::make_sum(2, {jktest::make_term(2, 1, expo, {})}, 1)));
  }
}

TEST_CASE("drivers validate split, rank and polarization") {
  OrderedBasis x2 = jk::standard_basis(2);

  FixedPointSet no_split = jktest::quotient_points();
  no_split.split.reset();
  CHECK(thrown_code([&] {
          jk::jk_quotient_abelian(no_split, jk::poly_const(3, 1),
                                  jktest::quotient_group(1), x2);
        }) == errc::dimension_mismatch);

  GroupData wrong_rank = jktest::quotient_group(1);
  wrong_rank.rank_t = 2;
  CHECK(thrown_code([&] {
          jk::jk_quotient_abelian(jktest::quotient_points(), jk::poly_const(3, 1),
                                  wrong_rank, x2);
        }) == errc::dimension_mismatch);

  GroupData bad_weyl = jktest::quotient_group(1);
  bad_weyl.weyl_order = 0;
  CHECK(thrown_code([&] {
          jk::jk_quotient_abelian(jktest::quotient_points(), jk::poly_const(3, 1),
                                  bad_weyl, x2);
        }) == errc::dimension_mismatch);

  OrderedBasis anti;
  anti.vectors = {cv({-1, 0}), cv({0, 1})};
  CHECK(thrown_code([&] {
          jk::jk_quotient_abelian(jktest::quotient_points(), jk::poly_const(3, 1),
                                  jktest::quotient_group(1), anti);
        }) == errc::inadmissible_polarization);
}

TEST_CASE("trivial Weyl group reduces the nonabelian driver to the abelian one") {
  jk::set_global_seed(7);
  FixedPointSet data = jktest::quotient_points();
  OrderedBasis x = jk::standard_basis(2);
  GroupData group = jktest::quotient_group(Rational(1, 2));
  FractionSum a = jk::jk_quotient_abelian(data, jk::poly_const(3, 1), group, x);
  FractionSum n = jk::jk_quotient_nonabelian(data, jk::poly_const(3, 1), group, x);
  CHECK(jk::fraction_sum_equal(a, n));
}

TEST_CASE("nonabelian value does not depend on the perturbation seed") {
  FixedPointSet data = jktest::hilb_points(2, 5);
  GroupData group = jktest::hilb_group(2, 5);
  OrderedBasis x = jktest::hilb_basis(2);
  jk::set_global_seed(101);
  FractionSum a = jk::hk_quotient(data, jk::poly_const(4, 1), group, x);
  jk::set_global_seed(202);
  FractionSum b = jk::hk_quotient(data, jk::poly_const(4, 1), group, x);
  CHECK(jk::fraction_sum_equal(a, b));
}

TEST_CASE("hyperKahler driver on one point of the Hilbert data") {
  jk::set_global_seed(7);
  for (int N : {2, 5, 11}) {
    FractionSum v = jk::hk_quotient(jktest::hilb_points(1, N), jk::poly_const(3, 1),
                                    jktest::hilb_group(1, N), jktest::hilb_basis(1));
    CHECK(jk::fraction_sum_equal(
        v, jktest::make_sum(
               2, {jktest::make_term(2, Rational(1, N), cv({0, 0}), {{cv({0, 1}), 2}})},
               1)));
  }
}

TEST_CASE("hyperKahler driver on two points of the Hilbert data") {
  jk::set_global_seed(7);
  FractionSum v = jk::hk_quotient(jktest::hilb_points(2, 5), jk::poly_const(4, 1),
                                  jktest::hilb_group(2, 5), jktest::hilb_basis(2));
  CHECK(jk::fraction_sum_equal(
      v, jktest::make_sum(
             3, {jktest::make_term(3, Rational(1, 50), cv({0, 0, 0}), {{cv({0, 0, 1}), 4}})},
             2)));
}

TEST_CASE("hyperKahler driver requires complex weights with trailing support") {
  GroupData group = jktest::hilb_group(1, 5);
  group.complex_weights = {cv({1, 0})};
  CHECK(thrown_code([&] {
          jk::hk_quotient(jktest::hilb_points(1, 5), jk::poly_const(3, 1), group,
                          jktest::hilb_basis(1));
        }) == errc::hypothesis_violated);
}

TEST_CASE("nonabelian driver weyl handling") {
  jk::set_global_seed(7);
  FixedPointSet data = jktest::hilb_points(2, 5);
  OrderedBasis x = jktest::hilb_basis(2);

  // a class that is not symmetric in the torus coordinates is rejected
  CHECK(thrown_code([&] {
          jk::hk_quotient(data, jk::poly_var(4, 0, 1), jktest::hilb_group(2, 5), x);
        }) == errc::non_symmetric_class);

  // halving the Weyl order doubles the value
  GroupData half = jktest::hilb_group(2, 5);
  half.weyl_order = 1;
  FractionSum v1 = jk::hk_quotient(data, jk::poly_const(4, 1), half, x);
  FractionSum v2 =
      jk::hk_quotient(data, jk::poly_const(4, 1), jktest::hilb_group(2, 5), x);
  CHECK(jk::fraction_sum_equal(jk::fs_scale(Rational(1, 2), v1), v2));
}

TEST_CASE("equal results across admissible polarization bases") {
  jk::set_global_seed(7);
  FixedPointSet data = jktest::hilb_points(2, 5);
  GroupData group = jktest::hilb_group(2, 5);

  OrderedBasis x = jktest::hilb_basis(2);
  OrderedBasis y;
  y.vectors = {cv({0, 0, 1}), Covector{Rational(1), Rational(0), Rational(1, 3)},
               cv({0, 1, 0})};
  CHECK_NOTHROW(jk::check_admissible(data, group, y));

  FractionSum vx = jk::hk_quotient(data, jk::poly_const(4, 1), group, x);
  FractionSum vy = jk::hk_quotient(data, jk::poly_const(4, 1), group, y);
  CHECK(jk::fraction_sum_equal(vx, vy));
}
