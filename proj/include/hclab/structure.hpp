#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "hclab/numeric.hpp"
#include "hclab/profile.hpp"

namespace hclab {

/// Independent sets of Q_d (d <= 5) as bitmasks, bit v for vertex v, in DFS order.
/// Depth-first over vertices in ascending id; including v excludes its neighbours.
std::vector<std::uint64_t> enumerate_independent_sets(int d);
void for_each_independent_set(int d, const std::function<void(std::uint64_t)>& visit);

struct StructureKey {
  std::size_t min_size = 0;
  std::size_t k = 0;   // number of 2-components of I_min
  std::size_t cl = 0;  // largest 2-component
  std::size_t total = 0;

  friend auto operator<=>(const StructureKey&, const StructureKey&) = default;
};

struct StructureOutcome {
  std::size_t min_size = 0;
  std::size_t k = 0;
  std::size_t cl = 0;

  friend auto operator<=>(const StructureOutcome&, const StructureOutcome&) = default;
};

struct StructureProfile {
  int d = 0;
  std::map<StructureKey, BigInt> counts;

  // Marginal over k, cl and total size: index = min-side size.
  std::vector<BigInt> min_side_marginal() const;
};

/// I_min is the smaller of I ∩ E and I ∩ O; on a tie the even side.
std::vector<Vertex> minority_side(int d, std::uint64_t set_mask);

StructureProfile structure_profile(int d);
std::map<StructureOutcome, ExactProbability> structure_pmf(const StructureProfile& s, const Rational& lambda);
std::map<StructureOutcome, ExactProbability> structure_pmf(int d, const Rational& lambda);

}  // namespace hclab
