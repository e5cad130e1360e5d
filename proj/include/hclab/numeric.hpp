#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hclab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact parse of "3", "-2", "0.125", "1/3", "2.5e-3".
Rational parse_rational(std::string_view text);

// Shortest round-trip decimal for a double.
std::string format_double(double x);
std::string format_fixed(double x, int significant_digits);

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt pow_int(const BigInt& base, unsigned exponent);
Rational pow_rational(const Rational& base, unsigned exponent);

// Natural logs of large exact values (no overflow); log of 0 is -inf.
double log_of(const BigInt& x);
double log_of(const Rational& x);
double to_double(const Rational& x);

// Throws NonpositiveLambda unless lambda > 0.
void require_positive(const Rational& lambda);

}  // namespace hclab
