#pragma once

#include <gmpxx.h>

#include <string>

#include "jk/errors.hpp"

namespace jk {

using Rational = mpq_class;

inline int sign(const Rational& q) { return sgn(q); }

/// Serializes as "p" for integers, "p/q" otherwise (canonical lowest terms).
inline std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

/// Parses "p" or "p/q" with nonzero q.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw jk_error(errc::parse_error, "bad rational '" + s + "'");
  if (q.get_den() == 0)
    throw jk_error(errc::parse_error, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// Exact binomial coefficient, n may be large but k small in practice.
inline Rational binomial(long n, long k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (long i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
  r.canonicalize();
  return r;
}

inline Rational factorial(long n) {
  Rational r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Rational pow_rational(const Rational& q, long e) {
  if (e == 0) return 1;
  if (e < 0) {
    if (q == 0) throw jk_error(errc::zero_denominator_factor, "0^negative");
    return 1 / pow_rational(q, -e);
  }
  Rational r = 1, b = q;
  long n = e;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  r.canonicalize();
  return r;
}

}  // namespace jk
