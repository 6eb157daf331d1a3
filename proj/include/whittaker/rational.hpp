#ifndef WHITTAKER_RATIONAL_HPP
#define WHITTAKER_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace whittaker {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p", "p/q". Throws Error(InvalidParams) on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string format_rational(const Rational& value);

std::vector<std::string> format_rationals(const std::vector<Rational>& values);

bool is_integer(const Rational& value);

/// n / d in canonical form.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace whittaker

#endif  // WHITTAKER_RATIONAL_HPP
