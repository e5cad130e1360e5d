#include "hclab/structure.hpp"

#include <bit>

#include "hclab/cube.hpp"
#include "hclab/errors.hpp"
#include "hclab/linked.hpp"

namespace hclab {

namespace {

void check_dimension(int d) {
  if (d < 1) throw PreconditionError("dimension must be >= 1");
  if (d > kMaxEnumerationDimension) throw DimensionTooLarge("set enumeration is limited to d <= 5");
}

}  // namespace

void for_each_independent_set(int d, const std::function<void(std::uint64_t)>& visit) {
  check_dimension(d);
  const CubeGraph g(d);
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::uint64_t> nbr(n, 0);
  for (std::size_t v = 0; v < n; ++v) g.for_each_neighbour(v, [&](Vertex w) { nbr[v] |= std::uint64_t{1} << w; });

  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> dfs = [&](std::size_t v, std::uint64_t chosen,
                                                                            std::uint64_t banned) {
    if (v == n) {
      visit(chosen);
      return;
    }
    dfs(v + 1, chosen, banned);
    if (!(banned >> v & 1)) dfs(v + 1, chosen | std::uint64_t{1} << v, banned | nbr[v]);
  };
  dfs(0, 0, 0);
}

std::vector<std::uint64_t> enumerate_independent_sets(int d) {
  std::vector<std::uint64_t> out;
  for_each_independent_set(d, [&](std::uint64_t m) { out.push_back(m); });
  return out;
}

std::vector<Vertex> minority_side(int d, std::uint64_t set_mask) {
  std::vector<Vertex> even, odd;
  for (std::uint64_t m = set_mask; m != 0; m &= m - 1) {
    const auto v = static_cast<Vertex>(std::countr_zero(m));
    if (v >= (Vertex{1} << d)) throw PreconditionError("set mask exceeds the cube");
    (parity_of(v) == Parity::Even ? even : odd).push_back(v);
  }
  return even.size() <= odd.size() ? even : odd;
}

std::vector<BigInt> StructureProfile::min_side_marginal() const {
  std::vector<BigInt> out((std::size_t{1} << (d - 1)) + 1, BigInt(0));
  for (const auto& [key, c] : counts) out.at(key.min_size) += c;
  return out;
}

StructureProfile structure_profile(int d) {
  check_dimension(d);
  std::map<StructureKey, std::uint64_t> tally;
  for_each_independent_set(d, [&](std::uint64_t m) {
    const auto minority = minority_side(d, m);
    const auto sizes = two_component_sizes(minority);
    StructureKey key;
    key.min_size = minority.size();
    key.k = sizes.size();
    for (auto s : sizes) key.cl = std::max(key.cl, s);
    key.total = static_cast<std::size_t>(std::popcount(m));
    ++tally[key];
  });
  StructureProfile out;
  out.d = d;
  for (const auto& [key, c] : tally) out.counts.emplace(key, BigInt(c));
  return out;
}

std::map<StructureOutcome, ExactProbability> structure_pmf(const StructureProfile& s, const Rational& lambda) {
  require_positive(lambda);
  std::map<StructureOutcome, Rational> mass;
  Rational z = 0;
  for (const auto& [key, c] : s.counts) {
    const Rational w = Rational(c) * pow_rational(lambda, static_cast<unsigned>(key.total));
    mass[{key.min_size, key.k, key.cl}] += w;
    z += w;
  }
  std::map<StructureOutcome, ExactProbability> out;
  for (const auto& [o, w] : mass) out.emplace(o, ExactProbability{w / z});
  return out;
}

std::map<StructureOutcome, ExactProbability> structure_pmf(int d, const Rational& lambda) {
  require_positive(lambda);
  return structure_pmf(structure_profile(d), lambda);
}

}  // namespace hclab
