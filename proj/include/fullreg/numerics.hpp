#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "fullreg/errors.hpp"

namespace fullreg {

// Arbitrary-precision integer. All counts in the library are carried exactly.
using ExactInteger = mpz_class;

// Arbitrary-precision rational. GMP keeps every arithmetic result in lowest
// terms with a positive denominator; values built from raw parts go through
// make_rational() so the same holds on construction.
using ExactRational = mpq_class;

inline ExactRational make_rational(const ExactInteger& num,
                                   const ExactInteger& den) {
  if (den == 0) throw UndefinedValue("rational with zero denominator");
  ExactRational r(num, den);
  r.canonicalize();
  return r;
}

inline ExactRational make_rational(long num, long den = 1) {
  return make_rational(ExactInteger(num), ExactInteger(den));
}

inline bool is_integer(const ExactRational& q) { return q.get_den() == 1; }

// Exact conversion; throws if q is not an integer.
inline ExactInteger to_integer(const ExactRational& q) {
  if (!is_integer(q)) {
    throw InvariantViolation("expected an integer, got " + q.get_str());
  }
  return q.get_num();
}

inline std::string to_string(const ExactInteger& z) { return z.get_str(); }
inline std::string to_string(const ExactRational& q) { return q.get_str(); }

inline ExactInteger parse_integer(const std::string& text) {
  ExactInteger z;
  if (text.empty() || z.set_str(text, 10) != 0) {
    throw ParseError("not a decimal integer: '" + text + "'");
  }
  return z;
}

/// n! for n >= 0.
inline ExactInteger factorial(std::int64_t n) {
  if (n < 0) throw InvalidArgument("factorial of negative number");
  ExactInteger r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// n!! for odd n >= -1, with (-1)!! = 1 so that (2n-3)!! is defined at n = 2.
inline ExactInteger double_factorial(std::int64_t n) {
  if (n == -1) return 1;
  if (n < 1 || n % 2 == 0) {
    throw InvalidArgument("double_factorial requires odd n >= -1, got " +
                          std::to_string(n));
  }
  ExactInteger r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// Binomial coefficient with integer top and k >= 0. Zero when 0 <= n < k;
/// for negative n this is the falling-factorial value n(n-1)...(n-k+1)/k!.
inline ExactInteger binomial(const ExactInteger& n, std::int64_t k) {
  if (k < 0) throw InvalidArgument("binomial with negative k");
  ExactInteger r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

inline ExactInteger binomial(std::int64_t n, std::int64_t k) {
  return binomial(ExactInteger(static_cast<long>(n)), k);
}

/// C(a, b) as the degree-b polynomial a(a-1)...(a-b+1)/b! in a rational a.
inline ExactRational generalized_binomial(const ExactRational& a,
                                          std::int64_t b) {
  if (b < 0) throw InvalidArgument("generalized_binomial with negative b");
  ExactRational r = 1;
  for (std::int64_t t = 0; t < b; ++t) {
    r *= a - t;
    r /= t + 1;
  }
  return r;
}

}  // namespace fullreg
