#include "hclab/linked.hpp"

#include <algorithm>

#include "hclab/errors.hpp"

namespace hclab {

std::size_t TwoComponentDecomposition::cl() const noexcept {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

namespace {

std::vector<std::size_t> component_labels(std::span<const Vertex> members, int k) {
  UnionFind uf(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (hamming(members[i], members[j]) <= k) uf.unite(i, j);
  std::vector<std::size_t> labels(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) labels[i] = uf.find(i);
  return labels;
}

}  // namespace

TwoComponentDecomposition two_components(const CubeGraph& g, const VertexSet& a) {
  require_one_sided(a, "two_components");
  const auto members = a.members();
  const auto labels = component_labels(members, 2);

  // Members ascend, so the first time a root appears is the part's smallest vertex.
  TwoComponentDecomposition out;
  std::vector<std::size_t> root_to_part(members.size(), members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::size_t& slot = root_to_part[labels[i]];
    if (slot == members.size()) {
      slot = out.parts.size();
      out.parts.emplace_back(g);
      out.sizes.push_back(0);
    }
    out.parts[slot].insert(members[i]);
    ++out.sizes[slot];
  }
  return out;
}

std::vector<std::size_t> two_component_sizes(std::span<const Vertex> members) {
  const auto labels = component_labels(members, 2);
  std::vector<std::size_t> count(members.size(), 0);
  for (auto l : labels) ++count[l];
  std::vector<std::size_t> sizes;
  for (auto c : count)
    if (c > 0) sizes.push_back(c);
  return sizes;
}

bool is_k_linked(std::span<const Vertex> members, int k) {
  if (members.size() <= 1) return true;
  const auto labels = component_labels(members, k);
  return std::all_of(labels.begin(), labels.end(), [&](std::size_t l) { return l == labels.front(); });
}

bool is_k_linked(const CubeGraph&, const VertexSet& a, int k) {
  const auto members = a.members();
  return is_k_linked(members, k);
}

namespace {

class LinkedSetEnumerator {
 public:
  LinkedSetEnumerator(const CubeGraph& g, const LinkedSetQuery& q, const std::function<void(const VertexSet&)>& visit)
      : g_(g), q_(q), visit_(visit) {
    add_steps(0, 0, 0);
    std::sort(steps_.begin(), steps_.end());
  }

  void run() {
    if (q_.size_max == 0) return;
    if (q_.anchor) {
      const Vertex a = *q_.anchor;
      if (!g_.contains(a)) throw PreconditionError("anchor outside the cube");
      if (q_.side && parity_of(a) != *q_.side) return;
      grow_from(a, /*root_minimal=*/false);
      return;
    }
    if (g_.dimension() > 6)
      throw DimensionTooLarge("full linked-set enumeration needs d <= 6 (got " + std::to_string(g_.dimension()) + ")");
    for (Vertex r = 0; r < g_.vertex_count(); ++r) {
      if (q_.side && parity_of(r) != *q_.side) continue;
      grow_from(r, /*root_minimal=*/true);
    }
  }

 private:
  void grow_from(Vertex root, bool root_minimal) {
    root_ = root;
    root_minimal_ = root_minimal;
    VertexSet sub(g_);
    sub.insert(root);
    VertexSet covered(g_);
    VertexSet ext(g_);
    covered.insert(root);
    for (Vertex m : steps_) {
      const Vertex u = root ^ m;
      covered.insert(u);
      if (admissible(u)) ext.insert(u);
    }
    extend(sub, covered, std::move(ext));
  }

  // XOR masks of weight 1..k (even weights only when confined to one side).
  void add_steps(Vertex mask, int weight, int next_bit) {
    if (weight > 0 && (!q_.side || weight % 2 == 0)) steps_.push_back(mask);
    if (weight == q_.k) return;
    for (int b = next_bit; b < g_.dimension(); ++b) add_steps(mask | (Vertex{1} << b), weight + 1, b + 1);
  }

  bool admissible(Vertex u) const noexcept { return !root_minimal_ || u > root_; }

  // ESU-style growth: each connected set containing the root is reached along exactly one path.
  void extend(VertexSet& sub, const VertexSet& covered, VertexSet ext) {
    if (++emitted_ > q_.budget)
      throw DimensionTooLarge("linked-set enumeration exceeded its budget of " + std::to_string(q_.budget) + " sets");
    visit_(sub);
    if (sub.size() >= q_.size_max) return;
    while (auto first = ext.bits().first()) {
      const Vertex w = *first;
      ext.erase(w);
      VertexSet next_ext = ext;
      VertexSet next_covered = covered;
      for (Vertex m : steps_) {
        const Vertex u = w ^ m;
        if (!covered.contains(u) && admissible(u)) next_ext.insert(u);
        next_covered.insert(u);
      }
      sub.insert(w);
      extend(sub, next_covered, std::move(next_ext));
      sub.erase(w);
    }
  }

  const CubeGraph& g_;
  const LinkedSetQuery& q_;
  const std::function<void(const VertexSet&)>& visit_;
  std::vector<Vertex> steps_;
  Vertex root_ = 0;
  bool root_minimal_ = false;
  std::uint64_t emitted_ = 0;
};

}  // namespace

void enumerate_linked_sets(const CubeGraph& g, const LinkedSetQuery& q,
                           const std::function<void(const VertexSet&)>& visit) {
  if (q.k < 1) throw PreconditionError("linkage distance k must be positive");
  LinkedSetEnumerator(g, q, visit).run();
}

std::vector<VertexSet> collect_linked_sets(const CubeGraph& g, const LinkedSetQuery& q) {
  std::vector<VertexSet> out;
  enumerate_linked_sets(g, q, [&](const VertexSet& s) { out.push_back(s); });
  return out;
}

}  // namespace hclab
