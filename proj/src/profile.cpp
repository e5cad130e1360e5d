#include "hclab/profile.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "hclab/errors.hpp"

namespace hclab {

namespace {

using Mask = std::uint64_t;

// Indexing of the two classes of Q_d by rank, plus neighbourhoods as masks over the other class.
struct SideIndex {
  explicit SideIndex(int d) : g(d) {
    evens = g.side_vertices(Parity::Even);
    odds = g.side_vertices(Parity::Odd);
    rank.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < evens.size(); ++i) rank[evens[i]] = i;
    for (std::size_t i = 0; i < odds.size(); ++i) rank[odds[i]] = i;
    even_nbrs.resize(evens.size());
    odd_nbrs.resize(odds.size());
    for (std::size_t i = 0; i < evens.size(); ++i)
      g.for_each_neighbour(evens[i], [&](Vertex w) { even_nbrs[i] |= Mask{1} << rank[w]; });
    for (std::size_t i = 0; i < odds.size(); ++i)
      g.for_each_neighbour(odds[i], [&](Vertex w) { odd_nbrs[i] |= Mask{1} << rank[w]; });
  }

  Mask even_mask(const VertexSet& s) const {
    Mask m = 0;
    s.for_each([&](Vertex v) {
      if (parity_of(v) == Parity::Even) m |= Mask{1} << rank[v];
    });
    return m;
  }
  Mask odd_mask(const VertexSet& s) const {
    Mask m = 0;
    s.for_each([&](Vertex v) {
      if (parity_of(v) == Parity::Odd) m |= Mask{1} << rank[v];
    });
    return m;
  }
  Mask odd_neighbourhood(Mask even_set) const {
    Mask out = 0;
    for (; even_set != 0; even_set &= even_set - 1) out |= even_nbrs[static_cast<std::size_t>(std::countr_zero(even_set))];
    return out;
  }
  Mask even_neighbourhood(Mask odd_set) const {
    Mask out = 0;
    for (; odd_set != 0; odd_set &= odd_set - 1) out |= odd_nbrs[static_cast<std::size_t>(std::countr_zero(odd_set))];
    return out;
  }

  CubeGraph g;
  std::vector<Vertex> evens, odds;
  std::vector<std::size_t> rank;
  std::vector<Mask> even_nbrs, odd_nbrs;
};

// Neighbourhood masks of every subset of the even vertices [offset, offset + len).
void subset_masks(const SideIndex& idx, std::size_t offset, std::size_t len, std::vector<Mask>& masks,
                  std::vector<std::uint8_t>& sizes) {
  const std::size_t count = std::size_t{1} << len;
  masks.assign(count, 0);
  sizes.assign(count, 0);
  for (std::size_t s = 1; s < count; ++s) {
    const auto low = static_cast<std::size_t>(std::countr_zero(s));
    masks[s] = masks[s & (s - 1)] | idx.even_nbrs[offset + low];
    sizes[s] = static_cast<std::uint8_t>(sizes[s & (s - 1)] + 1);
  }
}

// histogram[a][m] with m = number of odd vertices left free -> N(a, b) = sum_m hist * C(m, b).
BivariateProfile expand_histogram(int d, const std::vector<std::uint64_t>& hist, std::size_t odd_offset) {
  BivariateProfile p(d);
  const std::size_t n = p.side_size();
  std::vector<std::vector<BigInt>> binom(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    binom[m].resize(m + 1);
    for (std::size_t j = 0; j <= m; ++j) binom[m][j] = binomial(m, j);
  }
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t m = 0; m <= n; ++m) {
      const std::uint64_t h = hist[a * (n + 1) + m];
      if (h == 0) continue;
      for (std::size_t j = 0; j <= m; ++j) p.at(a, odd_offset + j) += binom[m][j] * h;
    }
  }
  return p;
}

}  // namespace

BivariateProfile::BivariateProfile(int d) : d_(d) {
  if (d < 1) throw PreconditionError("profile dimension must be >= 1");
  if (d > kMaxProfileDimension) throw DimensionTooLarge("exact profiles are limited to d <= 6");
  n_ = std::size_t{1} << (d - 1);
  counts_.assign((n_ + 1) * (n_ + 1), BigInt(0));
}

std::size_t BivariateProfile::index(std::size_t a, std::size_t b) const {
  if (a > n_ || b > n_) throw RangeError("profile index out of range");
  return a * (n_ + 1) + b;
}

BigInt BivariateProfile::total() const {
  BigInt t = 0;
  for (const auto& c : counts_) t += c;
  return t;
}

std::vector<BigInt> BivariateProfile::size_counts() const {
  std::vector<BigInt> out(2 * n_ + 1, BigInt(0));
  for (std::size_t a = 0; a <= n_; ++a)
    for (std::size_t b = 0; b <= n_; ++b) out[a + b] += at(a, b);
  return out;
}

BivariateProfile bivariate_profile(int d) {
  if (d > kMaxProfileDimension) throw DimensionTooLarge("exact profiles are limited to d <= 6");
  const SideIndex idx(d);
  const std::size_t n = idx.evens.size();
  const std::size_t lo_len = (n + 1) / 2;
  const std::size_t hi_len = n - lo_len;

  std::vector<Mask> lo_masks, hi_masks;
  std::vector<std::uint8_t> lo_sizes, hi_sizes;
  subset_masks(idx, 0, lo_len, lo_masks, lo_sizes);
  subset_masks(idx, lo_len, hi_len, hi_masks, hi_sizes);

  // hist[a][g] counts even subsets with |S| = a and |N(S)| = g.
  const std::size_t row = n + 1;
  std::vector<std::uint64_t> by_boundary(row * row, 0);
  const std::size_t hi_count = hi_masks.size();
  for (std::size_t s1 = 0; s1 < lo_masks.size(); ++s1) {
    const Mask m1 = lo_masks[s1];
    std::uint64_t* base = by_boundary.data() + lo_sizes[s1] * row;
    for (std::size_t s2 = 0; s2 < hi_count; ++s2)
      ++base[hi_sizes[s2] * row + static_cast<std::size_t>(std::popcount(m1 | hi_masks[s2]))];
  }

  std::vector<std::uint64_t> by_free(row * row, 0);
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t g = 0; g <= n; ++g) by_free[a * row + (n - g)] = by_boundary[a * row + g];
  return expand_histogram(d, by_free, 0);
}

BivariateProfile restricted_profile(int d, const VertexSet& forced_in, const VertexSet& forced_out) {
  if (d > kMaxEnumerationDimension) throw DimensionTooLarge("restricted profiles are limited to d <= 5");
  if (forced_in.dimension() != d || forced_out.dimension() != d)
    throw PreconditionError("restricted_profile: vertex sets have the wrong dimension");
  if (!forced_in.is_independent()) throw NotIndependentError("restricted_profile: forced_in contains an edge");
  if (forced_in.intersects(forced_out)) throw PreconditionError("restricted_profile: forced_in meets forced_out");

  const SideIndex idx(d);
  const std::size_t n = idx.evens.size();
  const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  const Mask in_even = idx.even_mask(forced_in), in_odd = idx.odd_mask(forced_in);
  const Mask out_even = idx.even_mask(forced_out), out_odd = idx.odd_mask(forced_out);
  const Mask free_even = full & ~in_even & ~out_even & ~idx.even_neighbourhood(in_odd);
  const auto forced_odd = static_cast<std::size_t>(std::popcount(in_odd));

  const std::size_t row = n + 1;
  std::vector<std::uint64_t> hist(row * row, 0);
  // Enumerate submasks of free_even (including the empty one).
  Mask s = 0;
  do {
    const Mask chosen = in_even | s;
    const Mask blocked = idx.odd_neighbourhood(chosen) | out_odd | in_odd;
    const auto m = static_cast<std::size_t>(std::popcount(full & ~blocked));
    ++hist[static_cast<std::size_t>(std::popcount(chosen)) * row + m];
    s = (s - free_even) & free_even;
  } while (s != 0);
  return expand_histogram(d, hist, forced_odd);
}

namespace {

// Z scaled by q^{2n}: sum_s c_s p^s q^{2n-s}, with lambda = p/q.
struct ScaledWeights {
  BigInt denominator;
  std::vector<BigInt> weight_of_size;  // p^s q^{2n-s}
};

ScaledWeights scaled_weights(std::size_t max_size, const Rational& lambda) {
  const BigInt p = boost::multiprecision::numerator(lambda);
  const BigInt q = boost::multiprecision::denominator(lambda);
  ScaledWeights w;
  w.weight_of_size.resize(max_size + 1);
  std::vector<BigInt> ppow(max_size + 1), qpow(max_size + 1);
  ppow[0] = qpow[0] = 1;
  for (std::size_t s = 1; s <= max_size; ++s) {
    ppow[s] = ppow[s - 1] * p;
    qpow[s] = qpow[s - 1] * q;
  }
  for (std::size_t s = 0; s <= max_size; ++s) w.weight_of_size[s] = ppow[s] * qpow[max_size - s];
  w.denominator = qpow[max_size];
  return w;
}

}  // namespace

Rational evaluate_partition(const BivariateProfile& p, const Rational& lambda) {
  require_positive(lambda);
  const auto counts = p.size_counts();
  const auto w = scaled_weights(counts.size() - 1, lambda);
  BigInt num = 0;
  for (std::size_t s = 0; s < counts.size(); ++s) num += counts[s] * w.weight_of_size[s];
  return Rational(num, w.denominator);
}

LogValue evaluate_partition(const BivariateProfile& p, const LogValue& lambda) {
  if (lambda.is_zero()) throw NonpositiveLambda("lambda must be positive");
  const auto counts = p.size_counts();
  std::vector<LogValue> terms;
  terms.reserve(counts.size());
  for (std::size_t s = 0; s < counts.size(); ++s)
    terms.push_back(LogValue::from_integer(counts[s]) * lambda.pow(static_cast<double>(s)));
  return log_sum(terms);
}

std::vector<ExactProbability> min_side_pmf(const BivariateProfile& p, const Rational& lambda) {
  require_positive(lambda);
  const std::size_t n = p.side_size();
  const auto w = scaled_weights(2 * n, lambda);
  std::vector<BigInt> mass(n + 1, BigInt(0));
  BigInt z = 0;
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t b = 0; b <= n; ++b) {
      const BigInt& c = p.at(a, b);
      if (c == 0) continue;
      const BigInt term = c * w.weight_of_size[a + b];
      mass[std::min(a, b)] += term;
      z += term;
    }
  }
  std::vector<ExactProbability> out;
  out.reserve(n + 1);
  for (const auto& m : mass) out.push_back({Rational(m, z)});
  return out;
}

ExactProbability conditional_occupancy(int d, const Rational& lambda, Vertex condition, Vertex target) {
  require_positive(lambda);
  if (d > kMaxEnumerationDimension) throw DimensionTooLarge("conditional_occupancy is limited to d <= 5");
  const CubeGraph g(d);
  if (!g.contains(condition) || !g.contains(target)) throw PreconditionError("vertex outside the cube");
  if (condition == target) throw PreconditionError("conditional_occupancy: condition and target coincide");
  if (g.adjacent(condition, target)) return {Rational(0)};
  const VertexSet none(d);
  const Rational both = evaluate_partition(restricted_profile(d, VertexSet(d, {condition, target}), none), lambda);
  const Rational given = evaluate_partition(restricted_profile(d, VertexSet(d, {condition}), none), lambda);
  return {both / given};
}

}  // namespace hclab
