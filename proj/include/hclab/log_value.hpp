#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <span>
#include <string>

#include "hclab/numeric.hpp"

namespace hclab {

/// A nonnegative real kept as (zero flag, natural log of magnitude).
class LogValue {
 public:
  constexpr LogValue() noexcept = default;

  static constexpr LogValue zero() noexcept { return LogValue(); }
  static constexpr LogValue one() noexcept { return from_log(0.0); }
  static constexpr LogValue from_log(double log_magnitude) noexcept {
    LogValue v;
    v.zero_ = false;
    v.log_ = log_magnitude;
    return v;
  }
  // Throws RangeError for negative or NaN input.
  static LogValue from_double(double x);
  static LogValue from_rational(const Rational& x);
  static LogValue from_integer(const BigInt& x) { return from_rational(Rational(x)); }

  constexpr bool is_zero() const noexcept { return zero_; }
  // -inf for zero.
  constexpr double log() const noexcept { return zero_ ? -std::numeric_limits<double>::infinity() : log_; }
  // May overflow to +inf.
  double value() const noexcept { return zero_ ? 0.0 : std::exp(log_); }

  LogValue& operator*=(const LogValue& o) noexcept;
  LogValue& operator/=(const LogValue& o);
  LogValue& operator+=(const LogValue& o) noexcept;
  friend LogValue operator*(LogValue a, const LogValue& b) noexcept { return a *= b; }
  friend LogValue operator/(LogValue a, const LogValue& b) { return a /= b; }
  friend LogValue operator+(LogValue a, const LogValue& b) noexcept { return a += b; }
  // a - b for a >= b; throws RangeError otherwise.
  friend LogValue operator-(const LogValue& a, const LogValue& b);

  LogValue pow(double exponent) const;

  friend bool operator==(const LogValue& a, const LogValue& b) noexcept {
    return a.zero_ == b.zero_ && (a.zero_ || a.log_ == b.log_);
  }
  friend std::partial_ordering operator<=>(const LogValue& a, const LogValue& b) noexcept {
    return a.log() <=> b.log();
  }

  std::string to_string() const;

 private:
  bool zero_ = true;
  double log_ = 0.0;
};

/// Compensated log-sum-exp over the inputs.
LogValue log_sum(std::span<const LogValue> terms);

// log C(n, k) via lgamma.
double log_binomial(double n, double k);

/// C(n, <= k) = sum_{i <= floor(k)} C(n, i); zero when k < 0. Exact for n <= 4096, log-scale otherwise.
LogValue binomial_prefix_sum(double n, double k);

}  // namespace hclab
