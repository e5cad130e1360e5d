#include "hclab/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hclab/errors.hpp"

namespace hclab {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

void require_lambda(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw NonpositiveLambda("lambda must be positive and finite");
}

void require_dimension(int d) {
  if (d < 1) throw RangeError("dimension must be >= 1");
  if (d > kMaxAsymptoticDimension) throw RangeError("dimension above " + std::to_string(kMaxAsymptoticDimension));
}

double log_side(int d) { return (d - 1) * std::log(2.0); }
double side_size(int d) { return std::ldexp(1.0, d - 1); }

// log e_D-style sum of x^k/k! over k in [lo, hi], stopping early once terms are negligible past the mode.
LogValue poisson_terms(double x, long lo, long hi) {
  if (hi < lo) return LogValue::zero();
  if (!std::isfinite(x) || x > 1e8) throw RangeError("Poisson sums are limited to x <= 1e8");
  const double lx = std::log(x);
  std::vector<LogValue> terms;
  double best = -std::numeric_limits<double>::infinity();
  for (long k = std::max(0L, lo); k <= hi; ++k) {
    const double t = static_cast<double>(k) * lx - std::lgamma(static_cast<double>(k) + 1.0);
    terms.push_back(LogValue::from_log(t));
    best = std::max(best, t);
    if (static_cast<double>(k) > x && t < best - 60.0) break;
  }
  return log_sum(terms);
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::R1: return "R1";
    case Regime::R2: return "R2";
    case Regime::R3: return "R3";
    case Regime::R4: return "R4";
    case Regime::BelowR4: return "below_R4";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  if (text == "R1") return Regime::R1;
  if (text == "R2") return Regime::R2;
  if (text == "R3") return Regime::R3;
  if (text == "R4") return Regime::R4;
  if (text == "below_R4") return Regime::BelowR4;
  throw UnknownRegime("unknown regime '" + std::string(text) + "'");
}

void RegimeParams::validate() const {
  if (!(omega_threshold > 0 && big_o_constant > 0 && c_lambda4 > 0 && log_margin > 0))
    throw PreconditionError("regime parameters must all be positive");
}

std::string RegimeParams::to_string() const {
  std::ostringstream out;
  out << "omega_threshold=" << format_double(omega_threshold) << " big_o_constant=" << format_double(big_o_constant)
      << " c_lambda4=" << format_double(c_lambda4) << " log_margin=" << format_double(log_margin);
  return out.str();
}

LogValue minority_intensity(double lambda, int d) {
  require_lambda(lambda);
  require_dimension(d);
  return LogValue::from_log(std::log(lambda / 2.0) + d * (std::log(2.0) - std::log1p(lambda)));
}

Classification classify_regime(double lambda, int d, const RegimeParams& p) {
  require_lambda(lambda);
  require_dimension(d);
  p.validate();
  const double dd = d;
  const double logd = std::log(dd);
  Classification c;
  c.r1_low = 1.0 + p.omega_threshold / dd;
  c.r2_low = 1.0 - p.big_o_constant / dd;
  c.r2_high = 1.0 + p.big_o_constant / dd;
  c.r3_low = kSqrt2 - 1.0 + (kSqrt2 + p.log_margin) * logd / dd;
  c.r3_high = 1.0 - p.omega_threshold / dd;
  c.r4_low = p.c_lambda4 * logd / std::cbrt(dd);
  // (sqrt2 + 1/log d) log d / d, written so that d = 1 stays finite.
  c.r4_high = kSqrt2 - 1.0 + kSqrt2 * logd / dd + 1.0 / dd;

  if (lambda >= c.r1_low) c.matches.push_back(Regime::R1);
  if (std::abs(lambda - 1.0) <= p.big_o_constant / dd) c.matches.push_back(Regime::R2);
  if (c.r3_low <= lambda && lambda <= c.r3_high) c.matches.push_back(Regime::R3);
  if (c.r4_low <= lambda && lambda <= c.r4_high) c.matches.push_back(Regime::R4);
  c.primary = c.matches.empty() ? Regime::BelowR4 : c.matches.front();
  return c;
}

LogValue z_estimate(double lambda, int d, Regime r) {
  require_lambda(lambda);
  require_dimension(d);
  const double base = side_size(d) * std::log1p(lambda);
  const double mu = minority_intensity(lambda, d).value();
  switch (r) {
    case Regime::R1: return LogValue::from_log(std::log(2.0) + base);
    case Regime::R2:
    case Regime::R3: return LogValue::from_log(std::log(2.0) + base + mu);
    case Regime::R4: return LogValue::from_log(base + mu);
    case Regime::BelowR4: break;
  }
  throw UnknownRegime("z_estimate needs one of R1..R4");
}

double poisson_min_pmf(double k, unsigned c) {
  const double gamma = 0.5 * std::exp(-k / 2.0);
  if (gamma == 0.0) return c == 0 ? 1.0 : 0.0;
  return std::exp(c * std::log(gamma) - gamma - std::lgamma(c + 1.0));
}

double m_condition_log(double lambda, int d, int m) {
  require_lambda(lambda);
  const double dd = d, mm = m;
  const double l1 = std::log1p(lambda);
  return mm * (1.0 + 2.0 * std::log(dd)) + (mm + 1.0) * std::log(lambda) + 2.0 * mm * (mm + 1.0) * l1 +
         dd * std::log(2.0) - dd * (mm + 1.0) * l1;
}

int solve_m(double lambda, int d, double tolerance, const RegimeParams& p) {
  if (!(tolerance > 0)) throw PreconditionError("solve_m tolerance must be positive");
  const auto c = classify_regime(lambda, d, p);
  bool in_r4 = false;
  for (auto r : c.matches) in_r4 = in_r4 || r == Regime::R4;
  if (!in_r4) throw MSolveFailure("lambda = " + format_double(lambda) + " is outside R4's range at d = " + std::to_string(d));
  const double cap = d >= 2 ? d / std::sqrt(std::log(static_cast<double>(d))) : 0.0;
  const double target = std::log(tolerance);
  for (int m = 1; m < cap; ++m)
    if (m_condition_log(lambda, d, m) <= target) return m;
  throw MSolveFailure("no m < d/sqrt(log d) meets the tolerance " + format_double(tolerance));
}

WindowReport threshold_windows(double lambda, int d, double epsilon, std::optional<int> m, const RegimeParams& p,
                               double m_tolerance) {
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  const auto c = classify_regime(lambda, d, p);
  WindowReport w;
  w.regime = c.primary;
  w.epsilon_used = epsilon;
  w.max_side_center = LogValue::from_log(std::log(lambda) + log_side(d) - std::log1p(lambda));
  const LogValue mu = minority_intensity(lambda, d);
  const double logd = std::log(static_cast<double>(d));

  switch (c.primary) {
    case Regime::R1:
    case Regime::R2:
    case Regime::R3:
      w.max_side_halfwidth = d >= 2 ? LogValue::from_log(0.5 * d * std::log(2.0) + 0.5 * std::log(logd)) : LogValue::zero();
      if (c.primary == Regime::R1) {
        w.min_side_low = LogValue::zero();
        w.min_side_high = LogValue::zero();
      } else if (c.primary == Regime::R3) {
        // mu +/- sqrt((2+eps) mu log mu); no spread when mu <= 1.
        LogValue spread = LogValue::zero();
        if (mu.log() > 0) spread = LogValue::from_log(0.5 * (std::log(2.0 + epsilon) + mu.log() + std::log(mu.log())));
        w.min_side_low = spread < mu ? mu - spread : LogValue::zero();
        w.min_side_high = mu + spread;
      }
      return w;
    case Regime::R4: {
      const int mm = m ? *m : solve_m(lambda, d, m_tolerance, p);
      if (mm < 2) throw MSolveFailure("the lower min-side bound needs m >= 2, got m = " + std::to_string(mm));
      w.m_used = mm;
      w.max_side_halfwidth = LogValue::from_log(std::log(static_cast<double>(d)) + std::log(logd) +
                                                d * (std::log(2.0) - std::log1p(lambda)));
      w.min_side_low = mu / LogValue::from_double(4.0 * std::log(static_cast<double>(mm)));
      w.min_side_high = LogValue::from_log(1.0 + 2.0 * std::log(static_cast<double>(mm))) * mu;
      return w;
    }
    case Regime::BelowR4: break;
  }
  throw UnknownRegime("lambda = " + format_double(lambda) + " lies below R4 at d = " + std::to_string(d));
}

long max_lower_bound_l(int d) {
  if (d < 2) return 0;
  const double v = std::floor(std::ldexp(1.0, d - 2) / (static_cast<double>(d) * d));
  return v > 1e18 ? static_cast<long>(1e18) : static_cast<long>(v);
}

LowerBound partition_lower_bound(double lambda, int d, long f, long l) {
  require_lambda(lambda);
  require_dimension(d);
  if (d < 2) throw RangeError("the lower bound needs d >= 2");
  if (f < 0 || f > l) throw RangeError("lower bound needs 0 <= f <= l");
  if (l > max_lower_bound_l(d)) throw RangeError("l = " + std::to_string(l) + " exceeds 2^{d-2}/d^2");
  const double dd = d;
  const double n = side_size(d);
  const LogValue mu = minority_intensity(lambda, d);
  const LogValue sum = poisson_terms(mu.value(), f, l);
  const double penalty = -static_cast<double>(l) * static_cast<double>(l) * dd * dd / std::ldexp(1.0, d - 2);
  LowerBound out;
  out.bound = LogValue::from_log(std::log(2.0) + n * std::log1p(lambda) + sum.log() + penalty + std::log1p(-2.0 / (dd * dd)));
  const double c = lambda / (1.0 + lambda);
  const double root = std::sqrt(std::log(dd) * (n - dd * static_cast<double>(f)));
  out.e1 = c * (n - dd * static_cast<double>(l)) - root;
  out.e2 = c * (n - dd * static_cast<double>(f)) + root;
  return out;
}

std::pair<long, long> lower_bound_window(double lambda, int d, double epsilon) {
  const double mu = minority_intensity(lambda, d).value();
  const long cap = max_lower_bound_l(d);
  long f = 0, l = 0;
  if (mu <= 1.0) {
    l = static_cast<long>(std::floor(std::log(static_cast<double>(d))));
  } else {
    const double spread = std::sqrt((2.0 + epsilon) * mu * std::log(mu));
    f = static_cast<long>(std::max(0.0, std::ceil(mu - spread)));
    l = static_cast<long>(std::min(std::floor(mu + spread), 1e18));
  }
  l = std::min(l, cap);
  f = std::min(f, l);
  return {f, l};
}

LogValue partition_upper_bound(double lambda, int d, const RegimeParams& p) {
  require_lambda(lambda);
  require_dimension(d);
  const double cutoff = p.c_lambda4 * std::log(static_cast<double>(d)) / std::cbrt(static_cast<double>(d));
  if (!(lambda > cutoff))
    throw RangeError("the upper bound needs lambda > c log d / d^{1/3} = " + format_double(cutoff));
  const double l1 = std::log1p(lambda);
  const double dd = d;
  const double correction =
      std::exp(2.0 * std::log(lambda) + 2.0 * l1 + 2.0 * std::log(dd) + dd * std::log(2.0) - 2.0 * dd * l1);
  return LogValue::from_log(std::log(2.0) + side_size(d) * l1 + minority_intensity(lambda, d).value() + correction);
}

namespace {

BigInt floor_rational(const Rational& r) {
  const BigInt n = boost::multiprecision::numerator(r);
  const BigInt q = boost::multiprecision::denominator(r);
  BigInt out = n / q;
  if (n < 0 && out * q != n) out -= 1;
  return out;
}

BigInt ceil_rational(const Rational& r) { return -floor_rational(Rational(-r)); }

HighPrecision to_high(const Rational& r) {
  return HighPrecision(boost::multiprecision::numerator(r)) / HighPrecision(boost::multiprecision::denominator(r));
}

}  // namespace

HoeffdingResult hoeffding_check(const Rational& lambda, const Rational& delta, unsigned m) {
  require_positive(lambda);
  if (delta <= 0) throw RangeError("delta must be positive");
  if (m == 0) throw RangeError("m must be positive");
  const Rational c = lambda / (1 + lambda);
  BigInt lo = floor_rational(m * (c - delta));
  BigInt hi = ceil_rational(m * (c + delta));
  if (lo < 0) lo = 0;
  if (hi > m) hi = m;
  HoeffdingResult r;
  r.j_low = lo.convert_to<long>();
  r.j_high = hi.convert_to<long>();
  r.exact_sum = 0;
  for (long j = r.j_low; j <= r.j_high; ++j)
    r.exact_sum += Rational(binomial(m, static_cast<std::uint64_t>(j))) * pow_rational(lambda, static_cast<unsigned>(j));
  const HighPrecision dm = to_high(delta);
  r.bound = (1 - 2 * exp(-2 * dm * dm * m)) * to_high(pow_rational(1 + lambda, m));
  r.ok = to_high(r.exact_sum) >= r.bound;
  return r;
}

TruncatedExp truncated_exp(long D, double x) {
  if (D < 0) throw RangeError("D must be nonnegative");
  if (!(x > 0)) throw RangeError("x must be positive");
  TruncatedExp t;
  t.value = poisson_terms(x, 0, D);
  const double dd = static_cast<double>(D);
  if (dd <= x) {
    const double head = D == 0 ? 0.0 : dd * std::log(std::exp(1.0) * x / dd);
    t.lower_bound_rhs = LogValue::from_log(head + std::log(dd + 1.0));
  } else {
    auto [tail, rhs] = truncated_exp_tail(D, x);
    t.upper_tail = tail;
    t.upper_bound_rhs = rhs;
  }
  return t;
}

std::pair<LogValue, LogValue> truncated_exp_tail(long D, double x) {
  if (!(x > 0)) throw RangeError("x must be positive");
  const double dd = static_cast<double>(D);
  if (!(dd > x)) throw RangeError("the tail bound needs D > x");
  const LogValue tail = poisson_terms(x, D + 1, std::numeric_limits<long>::max());
  const LogValue rhs = LogValue::from_log(dd * std::log(std::exp(1.0) * x / dd) + std::log(x / (dd - x)));
  return {tail, rhs};
}

double exp_mass_capture(double x, double c1, double c2) {
  if (!(x > 1)) throw RangeError("x must exceed 1");
  const double e1 = std::sqrt(c1 * std::log(x) / x);
  const double e2 = std::sqrt(c2 * std::log(x) / x);
  const long lo = static_cast<long>(std::floor((1.0 - e1) * x));
  const long hi = static_cast<long>(std::ceil((1.0 + e2) * x));
  return std::exp(poisson_terms(x, lo + 1, hi).log() - x);
}

}  // namespace hclab
