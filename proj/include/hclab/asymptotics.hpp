#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "hclab/log_value.hpp"
#include "hclab/numeric.hpp"

namespace hclab {

using HighPrecision = boost::multiprecision::cpp_dec_float_50;

// log2(1e300) keeps 2^{d-1} log(1+lambda) finite in double.
inline constexpr int kMaxAsymptoticDimension = 1000;

enum class Regime { R1, R2, R3, R4, BelowR4 };

std::string to_string(Regime r);
// Accepts "R1".."R4", "below_R4"; throws UnknownRegime.
Regime parse_regime(std::string_view text);

/// Finite stand-ins for the asymptotic placeholders in the regime definitions.
struct RegimeParams {
  double omega_threshold = 10.0;  // omega(1) in lambda >= 1 + omega(1)/d and lambda <= 1 - omega(1)/d
  double big_o_constant = 10.0;   // O(1) in |lambda - 1| <= O(1)/d
  double c_lambda4 = 0.1;         // c in lambda >= c log d / d^{1/3}
  double log_margin = 1.0;        // Omega(1) in the lower edge of R3

  void validate() const;  // throws PreconditionError unless all positive
  std::string to_string() const;
};

struct Classification {
  Regime primary = Regime::BelowR4;
  std::vector<Regime> matches;  // every range containing lambda, in order R1..R4
  // Cutoffs actually used.
  double r1_low = 0, r2_low = 0, r2_high = 0, r3_low = 0, r3_high = 0, r4_low = 0, r4_high = 0;
};

/// mu(lambda, d) = (lambda/2)(2/(1+lambda))^d.
LogValue minority_intensity(double lambda, int d);

Classification classify_regime(double lambda, int d, const RegimeParams& p = {});

/// Leading-order Z estimates with the o(1) terms dropped; BelowR4 throws UnknownRegime.
LogValue z_estimate(double lambda, int d, Regime r);

/// (gamma_k)^c e^{-gamma_k} / c!, gamma_k = e^{-k/2}/2.
double poisson_min_pmf(double k, unsigned c);

struct WindowReport {
  Regime regime = Regime::BelowR4;
  LogValue max_side_center;     // lambda 2^{d-1} / (1+lambda)
  LogValue max_side_halfwidth;
  // Absent where the theorem gives a distribution rather than a window (R2).
  std::optional<LogValue> min_side_low;
  std::optional<LogValue> min_side_high;
  std::optional<int> m_used;
  double epsilon_used = 0.0;
};

/// Concentration windows for the two sides. In R4, m is solved for when not given; m must be >= 2.
WindowReport threshold_windows(double lambda, int d, double epsilon, std::optional<int> m = std::nullopt,
                               const RegimeParams& p = {}, double m_tolerance = 0.01);

/// log of (ed^2)^m lambda^{m+1} (1+lambda)^{2m(m+1)} 2^d / (1+lambda)^{d(m+1)}.
double m_condition_log(double lambda, int d, int m);

/// Smallest m < d/sqrt(log d) whose condition value is <= tolerance; lambda must lie in R4's range.
int solve_m(double lambda, int d, double tolerance = 0.01, const RegimeParams& p = {});

struct LowerBound {
  LogValue bound;
  double e1 = 0.0;
  double e2 = 0.0;
};

// Largest l allowed by the lower-bound lemma: floor(2^{d-2}/d^2).
long max_lower_bound_l(int d);

/// Truncated-Poisson lower bound on Z counting sets with f <= min side <= l. RangeError unless
/// 0 <= f <= l <= 2^{d-2}/d^2 and d >= 2.
LowerBound partition_lower_bound(double lambda, int d, long f, long l);

/// (f, l) used with the lower bound: f = 0, l = log d when mu <= 1, else mu -/+ sqrt((2+eps) mu log mu);
/// both clamped into the admissible range.
std::pair<long, long> lower_bound_window(double lambda, int d, double epsilon);

/// log-scale 2(1+lambda)^{2^{d-1}} exp{mu + lambda^2(1+lambda)^2 d^2 2^d/(1+lambda)^{2d}}.
/// RangeError when lambda is below c log d / d^{1/3}.
LogValue partition_upper_bound(double lambda, int d, const RegimeParams& p = {});

struct HoeffdingResult {
  long j_low = 0;
  long j_high = 0;
  Rational exact_sum;
  HighPrecision bound;
  bool ok = false;
};

/// Exact window sum of lambda^j C(m, j) against (1 - 2 exp(-2 delta^2 m))(1+lambda)^m.
HoeffdingResult hoeffding_check(const Rational& lambda, const Rational& delta, unsigned m);

struct TruncatedExp {
  LogValue value;                             // e_D(x)
  std::optional<LogValue> lower_bound_rhs;    // D <= x: exp{D log(ex/D) + log(D+1)}
  std::optional<LogValue> upper_tail;         // D > x: e^x - e_D(x)
  std::optional<LogValue> upper_bound_rhs;    // D > x: exp{D log(ex/D) + log(x/(D-x))}
};

TruncatedExp truncated_exp(long D, double x);
// e^x - e_D(x) and its bound; RangeError unless D > x.
std::pair<LogValue, LogValue> truncated_exp_tail(long D, double x);

/// e_hi(x) - e_lo(x) over e^x with lo = floor((1-eps1)x), hi = ceil((1+eps2)x), eps_i = sqrt(c_i log x / x).
double exp_mass_capture(double x, double c1, double c2);

}  // namespace hclab
