#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jk/eqres.hpp"
#include "jk/fraction.hpp"
#include "jk/polynomial.hpp"

namespace jk {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

/// Labeled Young diagram: boxes[i] = (column, row) of label i+1, columns
/// starting at 1 and rows at 0; the lattice point of a box is (column, N*row).
struct LabeledDiagram {
  std::vector<std::pair<int, int>> boxes;
};

/// Exact Laurent polynomial in sigma: exponent -> coefficient.
struct SigmaValue {
  std::map<int, Rational> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_monomial() const { return terms.size() == 1; }
  bool operator==(const SigmaValue& o) const { return terms == o.terms; }
};

SigmaValue sigma_monomial(const Rational& c, int k);
SigmaValue sv_add(const SigmaValue& a, const SigmaValue& b);
SigmaValue sv_mul(const SigmaValue& a, const SigmaValue& b);

/// All partitions of n in descending lexicographic order; count p(n).
std::vector<Partition> partitions(int n);

/// "(2,1)"-style display name.
std::string partition_name(const Partition& lam);

/// Content fillings -(a + N b) of the boxes in row-major order from the
/// bottom-left box (1,0).
std::vector<long> content_vector(const Partition& lam, int N);

/// Elementary symmetric polynomial e_k in the first n of n+1 coordinates
/// (plus the regulator slot).
Polynomial elementary_symmetric(int n, int k);

/// The localization integrand over (tau_1..tau_n, sigma): numerator
/// (1/(n! N^n)) ((N+1)sigma)^n prod_{i!=j}(tau_i-tau_j)((N+1)sigma+tau_i-tau_j),
/// denominator sigma^{2n} prod_{i!=j}(sigma+tau_i-tau_j)(N sigma+tau_i-tau_j)
/// prod_k(sigma+tau_k)(N sigma-tau_k), regulator exponent (1/2)sum tau_i.
Fraction hilb_integrand(int n, int N);

/// Per-partition residue weight from the factor-multiset surgery on the
/// canonical labeling; a rational multiple of sigma^{-n}.
SigmaValue b_lambda(const Partition& lam, int N);

/// Same surgery from an explicit labeling (label-independence checks).
SigmaValue b_diagram(const LabeledDiagram& diagram, int N);

enum class HilbMethod { formula, eqres, oracle };

/// Integration over the Hilbert scheme of n points: closed formula, full
/// equivariant-residue evaluation, or the independent fixed-point oracle.
SigmaValue hilb_integrate(const Polynomial& alpha, int n, int N, HilbMethod method);

/// Independent oracle: sum over partitions of alpha at the content point
/// divided by the product of arm/leg tangent weights with (t1, t2) = (N sigma,
/// sigma); the convention is pinned by a startup assertion at n = 1.
SigmaValue armleg_oracle(const Polynomial& alpha, int n, int N);

/// True iff alpha vanishes at every content evaluation point of size n.
bool kernel_member(const Polynomial& alpha, int n, int N);

/// Generators C_k(tau) - C_k(p_lambda) sigma^k of the evaluation ideal.
std::vector<Polynomial> ideal_generators(const Partition& lam, int n, int N);

/// Rank of the evaluation matrix [m_mu(p_lambda)] at sigma = 1 over monomial
/// symmetric polynomials of degree <= degree_bound.
int evaluation_rank(int n, int N, int degree_bound);

/// Solve a pole span for its evaluation point: returns p with tau_i = p_i
/// sigma when the reduced span has the expected shape.
std::optional<Covector> pole_solution(const Pole& pole, int n);

/// Classify an evaluation point: the labeled Young diagram whose box contents
/// give p, when the point passes all the vanishing filters.
std::optional<LabeledDiagram> diagram_from_point(const Covector& p, int N);

}  // namespace jk
