#include "hclab/cube.hpp"

#include <algorithm>

#include "hclab/errors.hpp"

namespace hclab {

const char* to_string(Parity p) noexcept { return p == Parity::Even ? "even" : "odd"; }

const char* to_string(Side s) noexcept {
  switch (s) {
    case Side::Even: return "even";
    case Side::Odd: return "odd";
    case Side::Mixed: return "mixed";
  }
  return "?";
}

Vertex parse_vertex(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxCubeDimension))
    throw ParseError("bad vertex string '" + std::string(bits) + "'");
  Vertex v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("bad vertex string '" + std::string(bits) + "'");
    v = (v << 1) | static_cast<Vertex>(c - '0');
  }
  return v;
}

std::string format_vertex(Vertex v, int d) {
  std::string out(static_cast<std::size_t>(d), '0');
  for (int i = 0; i < d; ++i)
    if ((v >> i) & 1U) out[static_cast<std::size_t>(d - 1 - i)] = '1';
  return out;
}

CubeGraph::CubeGraph(int d) : d_(d) {
  if (d < 1) throw PreconditionError("cube dimension must be >= 1");
  if (d > kMaxCubeDimension) throw DimensionTooLarge("cube dimension " + std::to_string(d) + " exceeds " +
                                                     std::to_string(kMaxCubeDimension));
}

std::vector<Vertex> CubeGraph::side_vertices(Parity p) const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(side_size()));
  for (Vertex v = 0; v < vertex_count(); ++v)
    if (parity_of(v) == p) out.push_back(v);
  return out;
}

namespace {

std::size_t storage_bits(int d) {
  if (d < 1) throw PreconditionError("cube dimension must be >= 1");
  if (d > 34) throw DimensionTooLarge("vertex sets of Q_" + std::to_string(d) + " do not fit in memory");
  return std::size_t{1} << d;
}

}  // namespace

VertexSet::VertexSet(int d) : d_(d), bits_(storage_bits(d)) {}

VertexSet::VertexSet(int d, std::initializer_list<Vertex> members) : VertexSet(d) {
  for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(int d, std::span<const Vertex> members) : VertexSet(d) {
  for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(int d, Bitset bits) : d_(d), bits_(std::move(bits)) {
  if (bits_.size() != storage_bits(d)) throw PreconditionError("bitset length does not match 2^d");
}

VertexSet VertexSet::parse(int d, std::initializer_list<std::string_view> members) {
  VertexSet out(d);
  for (auto m : members) {
    if (m.size() != static_cast<std::size_t>(d)) throw ParseError("vertex '" + std::string(m) + "' has wrong length");
    out.insert(parse_vertex(m));
  }
  return out;
}

VertexSet VertexSet::whole_side(int d, Parity p) {
  VertexSet out(d);
  for (Vertex v = 0; v < (Vertex{1} << d); ++v)
    if (parity_of(v) == p) out.insert(v);
  return out;
}

void VertexSet::insert(Vertex v) {
  if (v >= bits_.size()) throw PreconditionError("vertex " + std::to_string(v) + " outside Q_" + std::to_string(d_));
  bits_.set(static_cast<std::size_t>(v));
}

Side VertexSet::side() const noexcept {
  bool even = false, odd = false;
  bits_.for_each([&](std::size_t i) { (parity_of(i) == Parity::Even ? even : odd) = true; });
  if (even && odd) return Side::Mixed;
  return odd ? Side::Odd : Side::Even;
}

bool VertexSet::is_independent() const {
  bool ok = true;
  bits_.for_each([&](std::size_t i) {
    for (int k = 0; k < d_ && ok; ++k) {
      const std::size_t j = i ^ (std::size_t{1} << k);
      if (j > i && bits_.test(j)) ok = false;
    }
  });
  return ok;
}

std::size_t VertexSet::count_on(Parity p) const noexcept {
  std::size_t n = 0;
  bits_.for_each([&](std::size_t i) { n += parity_of(i) == p ? 1 : 0; });
  return n;
}

VertexSet VertexSet::restricted_to(Parity p) const {
  VertexSet out(d_);
  bits_.for_each([&](std::size_t i) {
    if (parity_of(i) == p) out.bits_.set(i);
  });
  return out;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

std::string VertexSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](Vertex v) {
    if (!first) out += ',';
    first = false;
    out += format_vertex(v, d_);
  });
  return out + "}";
}

void require_one_sided(const VertexSet& a, const char* what) {
  if (a.side() == Side::Mixed) throw MixedSideError(std::string(what) + ": set meets both parity classes");
}

VertexSet neighborhood(const CubeGraph& g, const VertexSet& a) {
  VertexSet out(g);
  a.for_each([&](Vertex u) { g.for_each_neighbour(u, [&](Vertex w) { out.bits().set(w); }); });
  out -= a;
  return out;
}

VertexSet closure(const CubeGraph& g, const VertexSet& a) {
  require_one_sided(a, "closure");
  const VertexSet na = neighborhood(g, a);
  // Candidates are the neighbours of N(A); every v in [A] has N(v) nonempty and inside N(A).
  VertexSet out(g);
  na.for_each([&](Vertex y) {
    g.for_each_neighbour(y, [&](Vertex v) {
      if (out.contains(v)) return;
      bool inside = true;
      g.for_each_neighbour(v, [&](Vertex w) { inside = inside && na.contains(w); });
      if (inside) out.bits().set(v);
    });
  });
  return out;
}

bool is_small(const CubeGraph& g, const VertexSet& a) {
  return 2 * closure(g, a).size() <= g.side_size();
}

std::size_t neighborhood_size(const CubeGraph& g, std::span<const Vertex> members) {
  std::vector<Vertex> nb;
  nb.reserve(members.size() * static_cast<std::size_t>(g.dimension()));
  for (Vertex u : members) g.for_each_neighbour(u, [&](Vertex w) { nb.push_back(w); });
  std::sort(nb.begin(), nb.end());
  nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  std::vector<Vertex> sorted_members(members.begin(), members.end());
  std::sort(sorted_members.begin(), sorted_members.end());
  std::size_t inside = 0;
  for (Vertex w : nb)
    if (std::binary_search(sorted_members.begin(), sorted_members.end(), w)) ++inside;
  return nb.size() - inside;
}

}  // namespace hclab
