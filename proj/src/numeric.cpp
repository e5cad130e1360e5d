#include "hclab/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hclab/errors.hpp"

namespace hclab {

namespace {

BigInt parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
  BigInt out = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError("malformed number '" + std::string(whole) + "'");
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  if (text.empty()) throw ParseError("empty number");
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_digits(text.substr(0, slash), whole);
    const BigInt den = parse_digits(text.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      const std::string_view exp_text = text.substr(e + 1);
      const char* first = exp_text.data();
      if (!exp_text.empty() && exp_text.front() == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, exp_text.data() + exp_text.size(), exponent);
      if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size())
        throw ParseError("malformed exponent in '" + std::string(whole) + "'");
      text = text.substr(0, e);
    }
    std::string digits;
    long scale = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      scale = static_cast<long>(text.size() - dot - 1);
    } else {
      digits = std::string(text);
    }
    if (digits.empty() || (text.size() == 1 && text.front() == '.'))
      throw ParseError("malformed number '" + std::string(whole) + "'");
    const BigInt mantissa = parse_digits(digits, whole);
    const long shift = exponent - scale;
    const BigInt ten_pow = pow_int(BigInt(10), static_cast<unsigned>(std::labs(shift)));
    value = shift >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  }
  return negative ? Rational(-value) : value;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string format_fixed(double x, int significant_digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, x);
  return buf;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

BigInt pow_int(const BigInt& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

Rational pow_rational(const Rational& base, unsigned exponent) {
  return Rational(pow_int(boost::multiprecision::numerator(base), exponent),
                  pow_int(boost::multiprecision::denominator(base), exponent));
}

double log_of(const BigInt& x) {
  if (x < 0) throw RangeError("log of a negative integer");
  if (x == 0) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits) - 60;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_of(const Rational& x) {
  if (x < 0) throw RangeError("log of a negative rational");
  return log_of(boost::multiprecision::numerator(x)) - log_of(boost::multiprecision::denominator(x));
}

double to_double(const Rational& x) {
  if (x == 0) return 0.0;
  const double l = log_of(x < 0 ? Rational(-x) : x);
  if (l > 700 || l < -700) return (x < 0 ? -1.0 : 1.0) * std::exp(l);
  return x.convert_to<double>();
}

void require_positive(const Rational& lambda) {
  if (lambda <= 0) throw NonpositiveLambda("lambda must be positive");
}

}  // namespace hclab
