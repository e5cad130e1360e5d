#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hclab/asymptotics.hpp"

namespace hclab {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool asserted = true;  // report-only checks never fail a suite
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  void add(std::string name, bool pass, std::string detail, bool asserted = true);
};

struct SuiteOptions {
  int d = 0;  // 0 picks the suite's default dimension
  std::uint64_t seed = 1;
  RegimeParams params;
  double epsilon = 0.1;
  double container_c = 1.0;
};

inline constexpr std::string_view kSuiteNames[] = {"iso", "containers", "bounds", "sampler"};

// Lemma-10 strictness (exhaustive, d <= 5) and the Lemma-9 lower bound for |A| <= 2 (symmetry-reduced).
SuiteReport run_iso_suite(const SuiteOptions& o);
// Stage invariants over every small 2-linked A (d <= 4) or 10^4 seeded ones (d = 5).
SuiteReport run_container_suite(const SuiteOptions& o);
// Hoeffding grid, truncated-exponential bounds, mass capture, Z identities and the small-d sandwich.
SuiteReport run_bounds_suite(const SuiteOptions& o);
// Detailed balance, exact-sampler goodness of fit and Glauber occupancies on tiny cubes.
SuiteReport run_sampler_suite(const SuiteOptions& o);

// Throws PreconditionError on an unknown suite name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& o);

}  // namespace hclab
