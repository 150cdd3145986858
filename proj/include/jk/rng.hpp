#pragma once

#include <cstdint>
#include <random>

#include "jk/rational.hpp"

namespace jk {

/// Deterministic rational stream used for perturbation directions and random
/// test data. Same seed => same stream, independent of platform.
class rational_stream {
 public:
  explicit rational_stream(uint64_t seed) : eng_(seed) {}

  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng_);
  }

  /// Nonzero rational with small numerator/denominator.
  Rational small_rational() {
    long num = 0;
    while (num == 0) num = integer(-9, 9);
    long den = integer(1, 7);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  /// Rational in [lo, hi] range numerators over denominator 1..4 (may be zero).
  Rational bounded_rational(long lo, long hi) {
    Rational q(integer(lo, hi), integer(1, 4));
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 eng_;
};

/// Process-wide seed for driver perturbation streams (CLI --seed / JKRES_SEED).
uint64_t global_seed();
void set_global_seed(uint64_t seed);

}  // namespace jk
