#include "jk/classexpr.hpp"

#include <cctype>
#include <string>

#include "jk/errors.hpp"
#include "jk/hilb.hpp"

namespace jk {

namespace {

// Recursive-descent parser with precedence ^ > * > +/- and a leading unary
// minus; no implicit multiplication.
struct Parser {
  const std::string& src;
  size_t pos = 0;
  int n;

  Parser(const std::string& s, int points) : src(s), n(points) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw jk_error(errc::parse_error,
                   msg + " at offset " + std::to_string(pos) + " in class expression");
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  long parse_uint() {
    skip_ws();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      fail("expected an integer");
    long v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      if (v > 1000000000L) fail("integer literal too large");
      ++pos;
    }
    return v;
  }

  Polynomial parse_atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      Polynomial e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = parse_uint();
      if (eat('/')) {
        long den = parse_uint();
        if (den == 0) fail("zero denominator");
        return poly_const(n + 2, Rational(num, den));
      }
      return poly_const(n + 2, Rational(num));
    }
    if (c == 'C') {
      ++pos;
      long k = parse_uint();
      if (k < 1 || k > n) fail("class index out of range");
      return elementary_symmetric(n, static_cast<int>(k));
    }
    if (src.compare(pos, 5, "sigma") == 0) {
      pos += 5;
      return poly_var(n + 2, n);
    }
    fail("unexpected character");
  }

  Polynomial parse_power() {
    Polynomial base = parse_atom();
    if (eat('^')) {
      long e = parse_uint();
      return poly_pow(base, e);
    }
    return base;
  }

  Polynomial parse_term() {
    Polynomial p = parse_power();
    while (eat('*')) p = poly_mul(p, parse_power());
    return p;
  }

  Polynomial parse_expr() {
    bool neg = false;
    if (peek() == '-') {
      ++pos;
      neg = true;
    } else if (peek() == '+') {
      ++pos;
    }
    Polynomial p = parse_term();
    if (neg) p = poly_scale(Rational(-1), p);
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        poly_add_inplace(p, parse_term());
      } else if (c == '-') {
        ++pos;
        poly_add_inplace(p, poly_scale(Rational(-1), parse_term()));
      } else {
        break;
      }
    }
    return p;
  }
};

}  // namespace

Polynomial parse_class_expr(const std::string& src, int n) {
  if (n < 0) throw jk_error(errc::invalid_n, "point count must be nonnegative");
  Parser parser(src, n);
  Polynomial p = parser.parse_expr();
  parser.skip_ws();
  if (parser.pos != src.size()) parser.fail("trailing input");
  return p;
}

}  // namespace jk
