#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hclab/bitset.hpp"
#include "hclab/cube.hpp"
#include "hclab/log_value.hpp"

namespace hclab {

/// Finite bipartite graph on X = {0..nx-1}, Y = {0..ny-1}; index order is the vertex order used for
/// every "smallest" choice.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t nx, std::size_t ny, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  // X = even vertices, Y = odd vertices, both ascending.
  static BipartiteGraph hypercube(int d);
  static BipartiteGraph complete(std::size_t nx, std::size_t ny);
  static BipartiteGraph perfect_matching(std::size_t n);
  // The cycle C_{2n}: x_i ~ y_i, y_{i+1 mod n}. Needs n >= 2.
  static BipartiteGraph even_cycle(std::size_t n);
  // Union of `degree` seeded random perfect matchings, duplicate edges dropped.
  static BipartiteGraph random_matching_union(std::size_t n, int degree, std::uint64_t seed);

  std::size_t x_count() const noexcept { return xadj_.size(); }
  std::size_t y_count() const noexcept { return yadj_.size(); }
  const std::vector<std::size_t>& x_neighbours(std::size_t x) const { return xadj_.at(x); }
  const std::vector<std::size_t>& y_neighbours(std::size_t y) const { return yadj_.at(y); }
  // Common degree when every vertex has the same degree.
  std::optional<int> regular_degree() const;
  std::size_t min_x_degree() const;
  std::size_t max_y_degree() const;

  Bitset empty_x() const { return Bitset(x_count()); }
  Bitset empty_y() const { return Bitset(y_count()); }

  // Hypercube instances remember their labels.
  const std::vector<Vertex>& x_labels() const noexcept { return x_labels_; }
  const std::vector<Vertex>& y_labels() const noexcept { return y_labels_; }

 private:
  std::vector<std::vector<std::size_t>> xadj_, yadj_;
  std::vector<Vertex> x_labels_, y_labels_;
};

// For A ⊆ X: N(A) ⊆ Y, [A] = {x : N(x) ⊆ N(A)}, degree counts into a set.
Bitset neighbours_of_x(const BipartiteGraph& g, const Bitset& a);
Bitset neighbours_of_y(const BipartiteGraph& g, const Bitset& b);
Bitset closure_x(const BipartiteGraph& g, const Bitset& a);
std::size_t degree_into_y(const BipartiteGraph& g, std::size_t x, const Bitset& ys);
std::size_t degree_into_x(const BipartiteGraph& g, std::size_t y, const Bitset& xs);
// 2-linked in the bipartite sense: any two members joined by a chain of shared Y-neighbours.
bool is_two_linked_x(const BipartiteGraph& g, const Bitset& a);

// Hypercube index maps (X = evens, Y = odds in ascending order).
Bitset to_x_indices(const BipartiteGraph& cube, const VertexSet& a);
VertexSet from_x_indices(const BipartiteGraph& cube, int d, const Bitset& xs);
VertexSet from_y_indices(const BipartiteGraph& cube, int d, const Bitset& ys);

/// Greedy cover of X by Y: take the Y-vertex covering the most uncovered X-vertices, smallest index on ties.
/// Throws UncoverableError if some x has no neighbour.
std::vector<std::size_t> greedy_cover(const BipartiteGraph& g);
// (|Y|/a)(1 + log b) with a = min X-degree, b = max Y-degree.
double lovasz_stein_bound(const BipartiteGraph& g);

/// min |N(K)| over y ∈ Y and K ⊆ N(y) with |K| = phi + 1 (monotone, so this is the minimum over |K| > phi).
/// Throws BudgetExceeded beyond `budget` subset evaluations.
std::size_t compute_m_phi(const BipartiteGraph& g, int phi, std::uint64_t budget = 50'000'000);

enum class Stage { First, Second };
std::string to_string(Stage s);

struct ContainerPair {
  Bitset outer;  // F* or F, inside Y
  Bitset inner;  // S* or S, inside X
  Stage stage = Stage::First;
  int parameter = 0;  // phi or psi
  double c = 0.0;     // C for the first stage
  std::size_t refinement_steps = 0;
  // Second stage only: vertices moved into F, and removed from S, after refinement.
  std::size_t repairs_added = 0;
  std::size_t repairs_removed = 0;
};

struct ApproxTranscript {
  Bitset t0, t0_prime, t1;                                  // inside Y
  std::vector<std::pair<std::size_t, std::size_t>> omega;  // edges (y, x), y ∈ T0, x ∉ [A]
  Bitset f_prime;                                           // F' before refinement
  std::size_t retries = 0;                                  // failed draws before success
  std::vector<std::size_t> refinement;                      // X-vertices u chosen, in order
};

struct FirstApproxOptions {
  int phi = 1;
  double c = 1.0;
  std::uint64_t seed = 1;
  std::size_t retry_cap = 1000;
  std::optional<std::size_t> m_phi;  // computed when absent
};

/// Randomised then algorithmic first approximation of a nonempty 2-linked A ⊆ X.
std::pair<ContainerPair, ApproxTranscript> first_approx(const BipartiteGraph& g, const Bitset& a,
                                                        const FirstApproxOptions& opts);

/// F' from (T0, T0', T1, Omega) alone.
Bitset rebuild_f_prime(const BipartiteGraph& g, const ApproxTranscript& tr);

/// Second approximation with 1 <= psi <= d/2. After the psi-refinement and S = {u : d_F(u) >= d - psi},
/// v ∈ N(A)∖F with d_S(v) > psi are moved into F (recomputing S), then for v ∉ N(A) members of N(v) ∩ S
/// are dropped from S, smallest first, until d_S(v) <= psi.
ContainerPair second_approx(const BipartiteGraph& g, const Bitset& a, const ContainerPair& first, int psi);

struct StageCheck {
  bool pass = false;
  double slack_outer = 0.0;
  double slack_inner = 0.0;
  std::vector<std::string> failures;
};

// First stage: F* ⊆ N(A), S* ⊇ [A], |N(A)∖F*| and |S*∖[A]| <= td/(d-phi), and at most
// dt/(phi(d-phi)) + 1 refinement steps. Slacks are the two size margins.
StageCheck check_first_stage(const BipartiteGraph& g, const Bitset& a, const ContainerPair& p);
// Second stage: F ⊆ N(A), S ⊇ [A], the two degree conditions and |S| <= |F| + 2t psi/(d-psi).
// slack_outer is the margin in the last inequality, slack_inner the smallest degree margin.
StageCheck check_second_stage(const BipartiteGraph& g, const Bitset& a, const ContainerPair& p);

/// max{(1+l)^{g-gamma t}, C(3dg, <= 2t psi/(d-psi) + gamma t)(1+l)^{g-t}}.
LogValue reconstruction_bound(int d, double g, double t, double psi, double gamma, double lambda);

/// Bound on the number of first-stage pairs.
LogValue family_bound_a1(int d, double g, double t, double phi, double c, double size_y, double m_phi);
/// exp{cx/d + ct log d / psi}.
LogValue family_bound_a2(double x, double t, double psi, double c, int d);

struct AggregateBounds {
  LogValue lemma11_rhs;  // 2^d (1+l)^g exp{-c'(g-a) log d / d^{2/3}}
  LogValue cor12_rhs;    // (ed^2)^{m-1} l^m (1+l)^{2m(m-1)} 2^d / (1+l)^{md}
};
AggregateBounds aggregate_bounds(double lambda, int d, double a, double g, int m, double c_prime);

struct GammaChoice {
  double gamma = 0.0;
  double lower_limit = 0.0;  // -2 psi/(d - psi)
  bool admissible = false;   // lower_limit < gamma <= 1
};
GammaChoice assembled_gamma(double lambda, int d, double psi);

// ---- harness over Q_d ----

/// Every 2-linked small nonempty A ⊆ E (d <= 4).
std::vector<VertexSet> all_small_two_linked(int d);
/// `count` seeded random 2-linked small A ⊆ E grown by distance-2 steps.
std::vector<VertexSet> random_small_two_linked(int d, std::size_t count, std::uint64_t seed);

struct HarnessRow {
  int d = 0;
  std::size_t size = 0;  // |A|
  std::size_t a = 0, g = 0, t = 0;
  int phi_or_psi = 0;
  Stage stage = Stage::First;
  bool pass = false;
  double slack_outer = 0.0, slack_inner = 0.0;
  std::size_t f_size = 0, s_size = 0;
};

struct HarnessOptions {
  int phi = 0;                 // 0 means d/2
  std::vector<int> psis;       // empty means {1, ..., floor(d/2)}
  double c = 1.0;
  std::uint64_t seed = 1;
};

struct HarnessResult {
  std::vector<HarnessRow> rows;
  std::vector<std::string> failures;
  std::size_t rebuild_mismatches = 0;
  std::size_t total_retries = 0;
  std::size_t total_repairs = 0;
  bool all_pass() const;
};

HarnessResult run_container_harness(int d, const std::vector<VertexSet>& sources, const HarnessOptions& opts);

inline constexpr const char* kHarnessCsvHeader = "d,|A|,a,g,t,phi_or_psi,stage,pass,slack_outer,slack_inner,|F|,|S|";
void write_harness_csv(std::ostream& out, const HarnessResult& r);

}  // namespace hclab
