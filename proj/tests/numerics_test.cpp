#include <gtest/gtest.h>

#include <random>

#include "fullreg/numerics.hpp"

namespace fullreg {
namespace {

TEST(Factorial, SmallValues) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(factorial(10), 3628800);
}

TEST(Factorial, LargeValuesAreExact) {
  // 400! has 869 decimal digits and ends in 99 zeros.
  const std::string s = factorial(400).get_str();
  EXPECT_EQ(s.size(), 869U);
  EXPECT_EQ(s.substr(s.size() - 99), std::string(99, '0'));
  EXPECT_NE(s[s.size() - 100], '0');
  EXPECT_EQ(factorial(400) / factorial(399), 400);
}

TEST(Factorial, RejectsNegative) { EXPECT_THROW(factorial(-1), InvalidArgument); }

TEST(DoubleFactorial, Values) {
  EXPECT_EQ(double_factorial(1), 1);
  EXPECT_EQ(double_factorial(5), 15);
  EXPECT_EQ(double_factorial(-1), 1);
  EXPECT_EQ(double_factorial(9), 945);
}

TEST(DoubleFactorial, RejectsEvenAndBelowMinusOne) {
  EXPECT_THROW(double_factorial(4), InvalidArgument);
  EXPECT_THROW(double_factorial(0), InvalidArgument);
  EXPECT_THROW(double_factorial(-3), InvalidArgument);
}

TEST(DoubleFactorial, ConnectsToFactorial) {
  // (2k)! = 2^k k! (2k-1)!!
  for (long k = 1; k <= 60; ++k) {
    ExactInteger pow2 = 1;
    pow2 <<= k;
    EXPECT_EQ(factorial(2 * k), pow2 * factorial(k) * double_factorial(2 * k - 1)) << k;
  }
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(6, 3), 20);
  EXPECT_EQ(binomial(2, 5), 0);
  EXPECT_EQ(binomial(-2, 2), 3);
  EXPECT_EQ(binomial(7, 0), 1);
  EXPECT_EQ(binomial(-1, 3), -1);
}

TEST(Binomial, NegativeTopReflection) {
  // C(u, v) = (-1)^v C(v - u - 1, v)
  for (long u = -12; u <= 12; ++u) {
    for (long v = 0; v <= 10; ++v) {
      const ExactInteger sign = v % 2 ? -1 : 1;
      EXPECT_EQ(binomial(u, v), sign * binomial(v - u - 1, v)) << u << " " << v;
    }
  }
}

TEST(GeneralizedBinomial, Values) {
  EXPECT_EQ(generalized_binomial(make_rational(7, 3), 0), 1);
  EXPECT_EQ(generalized_binomial(make_rational(5, 2), 1), make_rational(5, 2));
  EXPECT_EQ(generalized_binomial(make_rational(5, 2), 2), make_rational(15, 8));
}

TEST(GeneralizedBinomial, AgreesWithIntegerBinomial) {
  for (long n = 0; n <= 30; ++n) {
    for (long k = 0; k <= n + 2; ++k) {
      EXPECT_EQ(generalized_binomial(ExactRational(n), k), ExactRational(binomial(n, k)));
    }
  }
}

TEST(GeneralizedBinomial, PascalRecurrenceOnRandomRationals) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 9), bottom(1, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const ExactRational a = make_rational(num(rng), den(rng));
    const long b = bottom(rng);
    EXPECT_EQ(generalized_binomial(a, b),
              generalized_binomial(a - 1, b) + generalized_binomial(a - 1, b - 1))
        << a << " " << b;
  }
}

TEST(Rational, NormalizesOnConstruction) {
  const ExactRational q = make_rational(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_EQ(make_rational(2, 4), make_rational(1, 2));
  EXPECT_THROW(make_rational(1, 0), UndefinedValue);
}

TEST(Rational, IntegerConversion) {
  EXPECT_EQ(to_integer(make_rational(12, 4)), 3);
  EXPECT_THROW(to_integer(make_rational(1, 3)), InvariantViolation);
  EXPECT_EQ(parse_integer("-42"), -42);
  EXPECT_THROW(parse_integer("4x"), ParseError);
  EXPECT_THROW(parse_integer(""), ParseError);
}

}  // namespace
}  // namespace fullreg
