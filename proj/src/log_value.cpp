#include "hclab/log_value.hpp"

#include <algorithm>
#include <vector>

#include "hclab/errors.hpp"

namespace hclab {

LogValue LogValue::from_double(double x) {
  if (!(x >= 0.0)) throw RangeError("LogValue needs a nonnegative input, got " + format_double(x));
  if (x == 0.0) return zero();
  return from_log(std::log(x));
}

LogValue LogValue::from_rational(const Rational& x) {
  if (x < 0) throw RangeError("LogValue needs a nonnegative input");
  if (x == 0) return zero();
  return from_log(log_of(x));
}

LogValue& LogValue::operator*=(const LogValue& o) noexcept {
  if (zero_ || o.zero_) {
    *this = zero();
  } else {
    log_ += o.log_;
  }
  return *this;
}

LogValue& LogValue::operator/=(const LogValue& o) {
  if (o.zero_) throw RangeError("LogValue division by zero");
  if (!zero_) log_ -= o.log_;
  return *this;
}

LogValue& LogValue::operator+=(const LogValue& o) noexcept {
  if (o.zero_) return *this;
  if (zero_) return *this = o;
  const double hi = std::max(log_, o.log_);
  const double lo = std::min(log_, o.log_);
  log_ = hi + std::log1p(std::exp(lo - hi));
  return *this;
}

LogValue operator-(const LogValue& a, const LogValue& b) {
  if (b.zero_) return a;
  if (a.zero_ || b.log_ > a.log_) throw RangeError("LogValue subtraction would go negative");
  if (b.log_ == a.log_) return LogValue::zero();
  return LogValue::from_log(a.log_ + std::log(-std::expm1(b.log_ - a.log_)));
}

LogValue LogValue::pow(double exponent) const {
  if (zero_) {
    if (exponent > 0) return zero();
    if (exponent == 0) return one();
    throw RangeError("zero raised to a negative power");
  }
  return from_log(log_ * exponent);
}

std::string LogValue::to_string() const { return zero_ ? "0" : "exp(" + format_double(log_) + ")"; }

LogValue log_sum(std::span<const LogValue> terms) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (!t.is_zero()) hi = std::max(hi, t.log());
  if (hi == -std::numeric_limits<double>::infinity()) return LogValue::zero();
  // Neumaier summation of exp(l_i - hi).
  double sum = 0.0, comp = 0.0;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    const double x = std::exp(t.log() - hi);
    const double s = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - s) + x : (x - s) + sum;
    sum = s;
  }
  return LogValue::from_log(hi + std::log(sum + comp));
}

double log_binomial(double n, double k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

LogValue binomial_prefix_sum(double n, double k) {
  if (n < 0) throw RangeError("binomial_prefix_sum: negative n");
  if (k < 0) return LogValue::zero();
  const double top = std::min(std::floor(k), std::floor(n));
  if (n <= 4096 && n == std::floor(n)) {
    const auto nn = static_cast<std::uint64_t>(n);
    BigInt term = 1, total = 0;
    for (std::uint64_t i = 0; i <= static_cast<std::uint64_t>(top); ++i) {
      total += term;
      term = term * (nn - i) / (i + 1);
    }
    return LogValue::from_integer(total);
  }
  std::vector<LogValue> terms;
  terms.reserve(static_cast<std::size_t>(top) + 1);
  for (double i = 0; i <= top; ++i) terms.push_back(LogValue::from_log(log_binomial(n, i)));
  return log_sum(terms);
}

}  // namespace hclab
