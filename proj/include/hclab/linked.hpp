#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "hclab/cube.hpp"

namespace hclab {

// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t i) noexcept {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  bool unite(std::size_t a, std::size_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Maximal 2-linked pieces of a one-sided set, ordered by their smallest vertex.
struct TwoComponentDecomposition {
  std::vector<VertexSet> parts;
  std::vector<std::size_t> sizes;

  std::size_t k() const noexcept { return parts.size(); }
  // Largest part size; 0 for the empty set.
  std::size_t cl() const noexcept;
};

TwoComponentDecomposition two_components(const CubeGraph& g, const VertexSet& a);

// Part sizes only, for sparse member lists (any d). Members must lie on one side.
std::vector<std::size_t> two_component_sizes(std::span<const Vertex> members);

/// Connectivity of A in the graph joining vertices at Hamming distance <= k. Empty and singleton sets are linked.
bool is_k_linked(const CubeGraph& g, const VertexSet& a, int k);
bool is_k_linked(std::span<const Vertex> members, int k);

struct LinkedSetQuery {
  int k = 2;
  // Restrict to one parity class; nullopt means all of V(Q_d).
  std::optional<Parity> side;
  std::size_t size_max = 1;
  // Only sets containing this vertex.
  std::optional<Vertex> anchor;
  // Cap on emitted sets; exceeding it throws DimensionTooLarge.
  std::uint64_t budget = 100'000'000;
};

/// Streams every k-linked set of size 1..size_max matching the query exactly once.
/// Order is deterministic: roots ascend, extensions take the smallest candidate first.
/// Without an anchor the full enumeration is limited to d <= 6.
void enumerate_linked_sets(const CubeGraph& g, const LinkedSetQuery& q,
                           const std::function<void(const VertexSet&)>& visit);

std::vector<VertexSet> collect_linked_sets(const CubeGraph& g, const LinkedSetQuery& q);

inline std::vector<VertexSet> enumerate_2linked_sets(const CubeGraph& g, Parity side, std::size_t size_max,
                                                     std::optional<Vertex> anchor = std::nullopt) {
  return collect_linked_sets(g, LinkedSetQuery{2, side, size_max, anchor});
}

}  // namespace hclab
