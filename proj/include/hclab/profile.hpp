#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hclab/cube.hpp"
#include "hclab/log_value.hpp"
#include "hclab/numeric.hpp"

namespace hclab {

inline constexpr int kMaxProfileDimension = 6;
inline constexpr int kMaxEnumerationDimension = 5;

/// N(a, b): number of independent sets of Q_d with a even and b odd vertices.
class BivariateProfile {
 public:
  explicit BivariateProfile(int d);

  int dimension() const noexcept { return d_; }
  // 2^{d-1}; a and b range over [0, side_size()].
  std::size_t side_size() const noexcept { return n_; }

  const BigInt& at(std::size_t a, std::size_t b) const { return counts_[index(a, b)]; }
  BigInt& at(std::size_t a, std::size_t b) { return counts_[index(a, b)]; }

  BigInt total() const;
  // Sum of N(a, b) over a + b = s, for s in [0, 2n].
  std::vector<BigInt> size_counts() const;

  friend bool operator==(const BivariateProfile&, const BivariateProfile&) = default;

 private:
  std::size_t index(std::size_t a, std::size_t b) const;

  int d_;
  std::size_t n_;
  std::vector<BigInt> counts_;
};

/// A probability held exactly, in lowest terms.
struct ExactProbability {
  Rational value;

  BigInt numerator() const { return boost::multiprecision::numerator(value); }
  BigInt denominator() const { return boost::multiprecision::denominator(value); }
  double to_double() const { return hclab::to_double(value); }
  LogValue log_value() const { return LogValue::from_rational(value); }
};

/// Exact profile for d <= 6. Each even-side subset S contributes C(2^{d-1} - |N(S)|, b) sets at (|S|, b);
/// the even side is split in two halves so d = 6 needs 2^16 x 2^16 mask unions rather than a search.
BivariateProfile bivariate_profile(int d);

/// Profile of independent sets containing forced_in and avoiding forced_out (d <= 5).
BivariateProfile restricted_profile(int d, const VertexSet& forced_in, const VertexSet& forced_out);

Rational evaluate_partition(const BivariateProfile& p, const Rational& lambda);
LogValue evaluate_partition(const BivariateProfile& p, const LogValue& lambda);

/// P(min{|I ∩ E|, |I ∩ O|} = c) for c = 0..2^{d-1}; masses sum to exactly one.
std::vector<ExactProbability> min_side_pmf(const BivariateProfile& p, const Rational& lambda);

/// P(target ∈ I | condition ∈ I) under hc(lambda), d <= 5.
ExactProbability conditional_occupancy(int d, const Rational& lambda, Vertex condition, Vertex target);

// Profile file: "d=<d>", then "a b count" per nonzero entry sorted by (a, b); newline-terminated lines.
void write_profile(std::ostream& out, const BivariateProfile& p);
BivariateProfile read_profile(std::istream& in);
std::string profile_to_string(const BivariateProfile& p);
BivariateProfile profile_from_string(const std::string& text);

}  // namespace hclab
