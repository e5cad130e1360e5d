#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hclab/bitset.hpp"

namespace hclab {

using Vertex = std::uint64_t;

enum class Parity { Even, Odd };
enum class Side { Even, Odd, Mixed };

inline constexpr int kMaxCubeDimension = 40;

inline int hamming(Vertex u, Vertex v) noexcept { return std::popcount(u ^ v); }
inline Parity parity_of(Vertex v) noexcept { return (std::popcount(v) & 1) == 0 ? Parity::Even : Parity::Odd; }
inline Parity opposite(Parity p) noexcept { return p == Parity::Even ? Parity::Odd : Parity::Even; }
const char* to_string(Parity p) noexcept;
const char* to_string(Side s) noexcept;

// Parses a coordinate string such as "0110" (most significant coordinate first).
Vertex parse_vertex(std::string_view bits);
std::string format_vertex(Vertex v, int d);

/// The hypercube Q_d. Vertices are the integers [0, 2^d); u ~ v iff u ^ v is a power of two.
class CubeGraph {
 public:
  explicit CubeGraph(int d);

  int dimension() const noexcept { return d_; }
  Vertex vertex_count() const noexcept { return Vertex{1} << d_; }
  Vertex side_size() const noexcept { return Vertex{1} << (d_ - 1); }

  bool contains(Vertex v) const noexcept { return v < vertex_count(); }
  bool adjacent(Vertex u, Vertex v) const noexcept { return std::has_single_bit(u ^ v); }

  template <class F>
  void for_each_neighbour(Vertex v, F&& f) const {
    for (int i = 0; i < d_; ++i) f(v ^ (Vertex{1} << i));
  }

  std::vector<Vertex> side_vertices(Parity p) const;

  friend bool operator==(const CubeGraph&, const CubeGraph&) = default;

 private:
  int d_;
};

/// A set of vertices of Q_d, stored as a bit-vector of length 2^d.
class VertexSet {
 public:
  explicit VertexSet(int d);
  explicit VertexSet(const CubeGraph& g) : VertexSet(g.dimension()) {}
  VertexSet(int d, std::initializer_list<Vertex> members);
  VertexSet(int d, std::span<const Vertex> members);
  VertexSet(int d, Bitset bits);

  // Convenience for literals: VertexSet::parse(3, {"000", "011"}).
  static VertexSet parse(int d, std::initializer_list<std::string_view> members);
  static VertexSet whole_side(int d, Parity p);

  int dimension() const noexcept { return d_; }
  bool contains(Vertex v) const noexcept { return bits_.test(static_cast<std::size_t>(v)); }
  void insert(Vertex v);
  void erase(Vertex v) noexcept { bits_.reset(static_cast<std::size_t>(v)); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }

  // The empty set reports Even.
  Side side() const noexcept;
  bool is_independent() const;
  std::size_t count_on(Parity p) const noexcept;
  VertexSet restricted_to(Parity p) const;

  std::vector<Vertex> members() const;
  template <class F>
  void for_each(F&& f) const {
    bits_.for_each([&](std::size_t i) { f(static_cast<Vertex>(i)); });
  }

  const Bitset& bits() const noexcept { return bits_; }
  Bitset& bits() noexcept { return bits_; }

  bool is_subset_of(const VertexSet& o) const noexcept { return bits_.is_subset_of(o.bits_); }
  bool intersects(const VertexSet& o) const noexcept { return bits_.intersects(o.bits_); }

  VertexSet& operator|=(const VertexSet& o) noexcept { bits_ |= o.bits_; return *this; }
  VertexSet& operator&=(const VertexSet& o) noexcept { bits_ &= o.bits_; return *this; }
  VertexSet& operator-=(const VertexSet& o) noexcept { bits_ -= o.bits_; return *this; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) noexcept { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) noexcept { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) noexcept { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend bool operator<(const VertexSet& a, const VertexSet& b) noexcept { return a.bits_ < b.bits_; }

  std::string to_string() const;

 private:
  int d_;
  Bitset bits_;
};

/// N(A): vertices outside A with a neighbour in A.
VertexSet neighborhood(const CubeGraph& g, const VertexSet& a);

/// [A] = {v : N(v) ⊆ N(A)}. Throws MixedSideError unless A is one-sided.
VertexSet closure(const CubeGraph& g, const VertexSet& a);

/// |[A]| <= 2^{d-2}. Throws MixedSideError.
bool is_small(const CubeGraph& g, const VertexSet& a);

// Throws MixedSideError if the set meets both parity classes.
void require_one_sided(const VertexSet& a, const char* what);

// |N(A)| for a sparse member list (no 2^d storage); members must be distinct.
std::size_t neighborhood_size(const CubeGraph& g, std::span<const Vertex> members);

}  // namespace hclab
