#include "hclab/containers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hclab/errors.hpp"
#include "hclab/linked.hpp"
#include "hclab/random.hpp"

namespace hclab {

BipartiteGraph::BipartiteGraph(std::size_t nx, std::size_t ny,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : xadj_(nx), yadj_(ny) {
  for (const auto& [x, y] : edges) {
    if (x >= nx || y >= ny) throw PreconditionError("edge endpoint out of range");
    xadj_[x].push_back(y);
    yadj_[y].push_back(x);
  }
  for (auto* side : {&xadj_, &yadj_}) {
    for (auto& adj : *side) {
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
  }
}

BipartiteGraph BipartiteGraph::hypercube(int d) {
  const CubeGraph cube(d);
  const auto evens = cube.side_vertices(Parity::Even);
  const auto odds = cube.side_vertices(Parity::Odd);
  std::vector<std::size_t> rank(static_cast<std::size_t>(cube.vertex_count()));
  for (std::size_t i = 0; i < odds.size(); ++i) rank[odds[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < evens.size(); ++i)
    cube.for_each_neighbour(evens[i], [&](Vertex w) { edges.emplace_back(i, rank[w]); });
  BipartiteGraph g(evens.size(), odds.size(), edges);
  g.x_labels_ = evens;
  g.y_labels_ = odds;
  return g;
}

BipartiteGraph BipartiteGraph::complete(std::size_t nx, std::size_t ny) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) edges.emplace_back(x, y);
  return BipartiteGraph(nx, ny, edges);
}

BipartiteGraph BipartiteGraph::perfect_matching(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, i);
  return BipartiteGraph(n, n, edges);
}

BipartiteGraph BipartiteGraph::even_cycle(std::size_t n) {
  if (n < 2) throw PreconditionError("even_cycle needs n >= 2");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(i, i);
    edges.emplace_back(i, (i + 1) % n);
  }
  return BipartiteGraph(n, n, edges);
}

BipartiteGraph BipartiteGraph::random_matching_union(std::size_t n, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> perm(n);
  for (int k = 0; k < degree; ++k) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, perm[i]);
  }
  return BipartiteGraph(n, n, edges);
}

std::optional<int> BipartiteGraph::regular_degree() const {
  std::optional<std::size_t> deg;
  for (const auto* side : {&xadj_, &yadj_}) {
    for (const auto& adj : *side) {
      if (!deg) deg = adj.size();
      if (adj.size() != *deg) return std::nullopt;
    }
  }
  if (!deg) return std::nullopt;
  return static_cast<int>(*deg);
}

std::size_t BipartiteGraph::min_x_degree() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& adj : xadj_) best = std::min(best, adj.size());
  return xadj_.empty() ? 0 : best;
}

std::size_t BipartiteGraph::max_y_degree() const {
  std::size_t best = 0;
  for (const auto& adj : yadj_) best = std::max(best, adj.size());
  return best;
}

Bitset neighbours_of_x(const BipartiteGraph& g, const Bitset& a) {
  Bitset out = g.empty_y();
  a.for_each([&](std::size_t x) {
    for (auto y : g.x_neighbours(x)) out.set(y);
  });
  return out;
}

Bitset neighbours_of_y(const BipartiteGraph& g, const Bitset& b) {
  Bitset out = g.empty_x();
  b.for_each([&](std::size_t y) {
    for (auto x : g.y_neighbours(y)) out.set(x);
  });
  return out;
}

std::size_t degree_into_y(const BipartiteGraph& g, std::size_t x, const Bitset& ys) {
  std::size_t n = 0;
  for (auto y : g.x_neighbours(x)) n += ys.test(y);
  return n;
}

std::size_t degree_into_x(const BipartiteGraph& g, std::size_t y, const Bitset& xs) {
  std::size_t n = 0;
  for (auto x : g.y_neighbours(y)) n += xs.test(x);
  return n;
}

Bitset closure_x(const BipartiteGraph& g, const Bitset& a) {
  const Bitset na = neighbours_of_x(g, a);
  Bitset out = g.empty_x();
  for (std::size_t x = 0; x < g.x_count(); ++x)
    if (degree_into_y(g, x, na) == g.x_neighbours(x).size()) out.set(x);
  return out;
}

bool is_two_linked_x(const BipartiteGraph& g, const Bitset& a) {
  const auto members = a.indices();
  if (members.size() <= 1) return true;
  std::vector<std::size_t> pos(g.x_count(), members.size());
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = i;
  UnionFind uf(members.size());
  std::size_t merges = 0;
  for (std::size_t y = 0; y < g.y_count(); ++y) {
    std::optional<std::size_t> first;
    for (auto x : g.y_neighbours(y)) {
      if (pos[x] == members.size()) continue;
      if (first) merges += uf.unite(*first, pos[x]);
      else first = pos[x];
    }
  }
  return merges + 1 == members.size();
}

Bitset to_x_indices(const BipartiteGraph& cube, const VertexSet& a) {
  const auto& labels = cube.x_labels();
  Bitset out = cube.empty_x();
  a.for_each([&](Vertex v) {
    auto it = std::lower_bound(labels.begin(), labels.end(), v);
    if (it == labels.end() || *it != v) throw MixedSideError("vertex " + std::to_string(v) + " is not on the X side");
    out.set(static_cast<std::size_t>(it - labels.begin()));
  });
  return out;
}

VertexSet from_x_indices(const BipartiteGraph& cube, int d, const Bitset& xs) {
  VertexSet out(d);
  xs.for_each([&](std::size_t i) { out.insert(cube.x_labels().at(i)); });
  return out;
}

VertexSet from_y_indices(const BipartiteGraph& cube, int d, const Bitset& ys) {
  VertexSet out(d);
  ys.for_each([&](std::size_t i) { out.insert(cube.y_labels().at(i)); });
  return out;
}

std::vector<std::size_t> greedy_cover(const BipartiteGraph& g) {
  for (std::size_t x = 0; x < g.x_count(); ++x)
    if (g.x_neighbours(x).empty()) throw UncoverableError("X-vertex " + std::to_string(x) + " has no neighbour");
  Bitset uncovered = g.empty_x();
  for (std::size_t x = 0; x < g.x_count(); ++x) uncovered.set(x);
  std::vector<std::size_t> gain(g.y_count());
  for (std::size_t y = 0; y < g.y_count(); ++y) gain[y] = g.y_neighbours(y).size();
  std::vector<std::size_t> cover;
  while (uncovered.any()) {
    // max_element returns the first maximum, i.e. the smallest index on ties.
    const auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    cover.push_back(best);
    for (auto x : g.y_neighbours(best)) {
      if (!uncovered.test(x)) continue;
      uncovered.reset(x);
      for (auto y : g.x_neighbours(x)) --gain[y];
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

double lovasz_stein_bound(const BipartiteGraph& g) {
  const auto a = g.min_x_degree();
  if (a == 0) throw UncoverableError("some X-vertex has no neighbour");
  const auto b = g.max_y_degree();
  return static_cast<double>(g.y_count()) / static_cast<double>(a) * (1.0 + std::log(static_cast<double>(b)));
}

std::size_t compute_m_phi(const BipartiteGraph& g, int phi, std::uint64_t budget) {
  if (phi < 0) throw PreconditionError("phi must be nonnegative");
  const auto k = static_cast<std::size_t>(phi) + 1;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::uint64_t evaluated = 0;
  for (std::size_t y = 0; y < g.y_count(); ++y) {
    const auto& nbrs = g.y_neighbours(y);
    if (nbrs.size() < k) continue;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      if (++evaluated > budget) throw BudgetExceeded("compute_m_phi exceeded its subset budget");
      Bitset ks = g.empty_x();
      for (auto i : pick) ks.set(nbrs[i]);
      best = std::min(best, neighbours_of_x(g, ks).count());
      // Next k-combination of [0, nbrs.size()).
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == nbrs.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  if (best == std::numeric_limits<std::size_t>::max())
    throw PreconditionError("no Y-vertex has more than phi neighbours");
  return best;
}

std::string to_string(Stage s) { return s == Stage::First ? "first" : "second"; }

namespace {

struct Source {
  Bitset a, closure, nbhd;
  std::size_t t = 0;
  int d = 0;
};

Source describe(const BipartiteGraph& g, const Bitset& a) {
  const auto deg = g.regular_degree();
  if (!deg) throw PreconditionError("container stages need a regular bipartite graph");
  if (a.size() != g.x_count()) throw PreconditionError("A must be a subset of X");
  Source s;
  s.a = a;
  s.d = *deg;
  s.nbhd = neighbours_of_x(g, a);
  s.closure = closure_x(g, a);
  s.t = s.nbhd.count() - s.closure.count();
  return s;
}

// Add N(u) for the smallest u ∈ [A] with more than `limit` neighbours outside F, until none remain.
std::vector<std::size_t> refine(const BipartiteGraph& g, const Bitset& closure, int limit, Bitset& f) {
  std::vector<std::size_t> chosen;
  for (bool again = true; again;) {
    again = false;
    for (auto u = closure.first(); u; u = closure.next(*u + 1)) {
      const std::size_t outside = g.x_neighbours(*u).size() - degree_into_y(g, *u, f);
      if (outside > static_cast<std::size_t>(limit)) {
        for (auto y : g.x_neighbours(*u)) f.set(y);
        chosen.push_back(*u);
        again = true;
        break;
      }
    }
  }
  return chosen;
}

Bitset well_covered(const BipartiteGraph& g, const Bitset& f, int d, int limit) {
  Bitset s = g.empty_x();
  for (std::size_t u = 0; u < g.x_count(); ++u)
    if (degree_into_y(g, u, f) + static_cast<std::size_t>(limit) >= static_cast<std::size_t>(d)) s.set(u);
  return s;
}

}  // namespace

std::pair<ContainerPair, ApproxTranscript> first_approx(const BipartiteGraph& g, const Bitset& a,
                                                        const FirstApproxOptions& opts) {
  const Source src = describe(g, a);
  const int d = src.d;
  const double dd = d;
  if (opts.phi < 1 || opts.phi > d - 1) throw PreconditionError("phi must lie in [1, d-1]");
  const double phi = opts.phi;
  const double p = opts.c * std::log(dd) / (phi * dd);
  if (!(opts.c > 0) || !(p < 1.0)) throw PreconditionError("first_approx needs C > 0 and C log d/(phi d) < 1");
  if (a.none() || !is_two_linked_x(g, a)) throw PreconditionError("A must be nonempty and 2-linked");

  const std::size_t m_phi = opts.m_phi ? *opts.m_phi : compute_m_phi(g, opts.phi);
  const double gsize = static_cast<double>(src.nbhd.count());
  const double t = static_cast<double>(src.t);
  const double t0_cap = 3.0 * opts.c * gsize * std::log(dd) / (phi * dd);
  const double omega_cap = 3.0 * opts.c * t * dd * std::log(dd) / (phi * dd);
  const double t0p_cap = 3.0 * gsize / std::pow(dd, opts.c * static_cast<double>(m_phi) / (phi * dd));

  // N(A)^phi: members of N(A) with more than phi neighbours in [A].
  Bitset heavy = g.empty_y();
  src.nbhd.for_each([&](std::size_t y) {
    if (degree_into_x(g, y, src.closure) > static_cast<std::size_t>(opts.phi)) heavy.set(y);
  });

  Rng rng(opts.seed);
  ApproxTranscript tr;
  Bitset covered = g.empty_y();  // N(N_[A](T0))
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt == opts.retry_cap)
      throw RetryExhausted("no admissible T0 after " + std::to_string(opts.retry_cap) + " draws");
    tr.t0 = g.empty_y();
    src.nbhd.for_each([&](std::size_t y) {
      if (uniform01(rng) < p) tr.t0.set(y);
    });
    tr.omega.clear();
    Bitset inner = g.empty_x();  // N_[A](T0)
    tr.t0.for_each([&](std::size_t y) {
      for (auto x : g.y_neighbours(y)) {
        if (src.closure.test(x)) inner.set(x);
        else tr.omega.emplace_back(y, x);
      }
    });
    covered = neighbours_of_x(g, inner);
    tr.t0_prime = heavy - covered;
    if (static_cast<double>(tr.t0.count()) <= t0_cap && static_cast<double>(tr.omega.size()) <= omega_cap &&
        static_cast<double>(tr.t0_prime.count()) <= t0p_cap) {
      tr.retries = attempt;
      break;
    }
  }

  const Bitset l = covered | tr.t0_prime;
  // T1 covers [A]∖N(L) from N(A)∖L.
  const Bitset residual_x = src.closure - neighbours_of_y(g, l);
  const Bitset residual_y = src.nbhd - l;
  const auto xs = residual_x.indices();
  const auto ys = residual_y.indices();
  std::vector<std::size_t> ypos(g.y_count(), ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) ypos[ys[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (auto y : g.x_neighbours(xs[i]))
      if (ypos[y] < ys.size()) edges.emplace_back(i, ypos[y]);
  tr.t1 = g.empty_y();
  for (auto j : greedy_cover(BipartiteGraph(xs.size(), ys.size(), edges))) tr.t1.set(ys[j]);

  tr.f_prime = l | tr.t1;
  ContainerPair pair;
  pair.stage = Stage::First;
  pair.parameter = opts.phi;
  pair.c = opts.c;
  pair.outer = tr.f_prime;
  tr.refinement = refine(g, src.closure, opts.phi, pair.outer);
  pair.refinement_steps = tr.refinement.size();
  pair.inner = well_covered(g, pair.outer, d, opts.phi);
  return {pair, tr};
}

Bitset rebuild_f_prime(const BipartiteGraph& g, const ApproxTranscript& tr) {
  // N_[A](T0) = N(T0) minus the Omega endpoints, which are exactly the neighbours of T0 outside [A].
  Bitset outside = g.empty_x();
  for (const auto& [y, x] : tr.omega) outside.set(x);
  const Bitset inner = neighbours_of_y(g, tr.t0) - outside;
  return neighbours_of_x(g, inner) | tr.t0_prime | tr.t1;
}

ContainerPair second_approx(const BipartiteGraph& g, const Bitset& a, const ContainerPair& first, int psi) {
  const Source src = describe(g, a);
  const int d = src.d;
  if (psi < 1 || 2 * psi > d) throw PreconditionError("psi must lie in [1, d/2]");
  if (first.stage != Stage::First) throw PreconditionError("second_approx needs a first-stage pair");
  if (!first.outer.is_subset_of(src.nbhd) || !src.closure.is_subset_of(first.inner))
    throw PreconditionError("the first-stage pair does not approximate A");

  ContainerPair out;
  out.stage = Stage::Second;
  out.parameter = psi;
  out.outer = first.outer;
  out.refinement_steps = refine(g, src.closure, psi, out.outer).size();
  out.inner = well_covered(g, out.outer, d, psi);

  for (bool again = true; again;) {
    again = false;
    const Bitset missing = src.nbhd - out.outer;
    missing.for_each([&](std::size_t v) {
      if (degree_into_x(g, v, out.inner) > static_cast<std::size_t>(psi)) {
        out.outer.set(v);
        ++out.repairs_added;
        again = true;
      }
    });
    if (again) out.inner = well_covered(g, out.outer, d, psi);
  }
  for (std::size_t v = 0; v < g.y_count(); ++v) {
    if (src.nbhd.test(v)) continue;
    for (auto u : g.y_neighbours(v)) {
      if (degree_into_x(g, v, out.inner) <= static_cast<std::size_t>(psi)) break;
      if (out.inner.test(u)) {
        out.inner.reset(u);
        ++out.repairs_removed;
      }
    }
  }
  return out;
}

StageCheck check_first_stage(const BipartiteGraph& g, const Bitset& a, const ContainerPair& p) {
  const Source src = describe(g, a);
  const double dd = src.d, t = static_cast<double>(src.t), phi = p.parameter;
  StageCheck c;
  const double cap = t * dd / (dd - phi);
  if (!p.outer.is_subset_of(src.nbhd)) c.failures.push_back("F* not inside N(A)");
  if (!src.closure.is_subset_of(p.inner)) c.failures.push_back("S* misses part of [A]");
  c.slack_outer = cap - static_cast<double>((src.nbhd - p.outer).count());
  c.slack_inner = cap - static_cast<double>((p.inner - src.closure).count());
  if (c.slack_outer < -1e-9) c.failures.push_back("|N(A)\\F*| exceeds td/(d-phi)");
  if (c.slack_inner < -1e-9) c.failures.push_back("|S*\\[A]| exceeds td/(d-phi)");
  if (static_cast<double>(p.refinement_steps) > dd * t / (phi * (dd - phi)) + 1.0 + 1e-9)
    c.failures.push_back("refinement ran past dt/(phi(d-phi)) + 1 steps");
  c.pass = c.failures.empty();
  return c;
}

StageCheck check_second_stage(const BipartiteGraph& g, const Bitset& a, const ContainerPair& p) {
  const Source src = describe(g, a);
  const int d = src.d;
  const double dd = d, t = static_cast<double>(src.t), psi = p.parameter;
  StageCheck c;
  if (!p.outer.is_subset_of(src.nbhd)) c.failures.push_back("F not inside N(A)");
  if (!src.closure.is_subset_of(p.inner)) c.failures.push_back("S misses part of [A]");
  double margin = std::numeric_limits<double>::infinity();
  p.inner.for_each([&](std::size_t u) {
    margin = std::min(margin, static_cast<double>(degree_into_y(g, u, p.outer)) - (dd - psi));
  });
  for (std::size_t v = 0; v < g.y_count(); ++v) {
    if (p.outer.test(v)) continue;
    const double free = static_cast<double>(g.y_neighbours(v).size() - degree_into_x(g, v, p.inner));
    margin = std::min(margin, free - (dd - psi));
  }
  c.slack_inner = std::isinf(margin) ? 0.0 : margin;
  if (margin < 0) c.failures.push_back("a degree condition fails");
  c.slack_outer = static_cast<double>(p.outer.count()) + 2.0 * t * psi / (dd - psi) - static_cast<double>(p.inner.count());
  if (c.slack_outer < -1e-9) c.failures.push_back("|S| exceeds |F| + 2t psi/(d-psi)");
  c.pass = c.failures.empty();
  return c;
}

LogValue reconstruction_bound(int d, double g, double t, double psi, double gamma, double lambda) {
  const double dd = d;
  if (!(psi >= 1 && psi <= dd / 2)) throw PreconditionError("reconstruction_bound needs 1 <= psi <= d/2");
  if (!(gamma <= 1 && gamma > -2 * psi / (dd - psi)))
    throw PreconditionError("reconstruction_bound needs -2psi/(d-psi) < gamma <= 1");
  if (!(lambda > 0)) throw NonpositiveLambda("lambda must be positive");
  if (g < 0 || t < 0) throw PreconditionError("g and t must be nonnegative");
  const double l1 = std::log1p(lambda);
  const LogValue first = LogValue::from_log((g - gamma * t) * l1);
  const double k = 2 * t * psi / (dd - psi) + gamma * t;
  const LogValue second = binomial_prefix_sum(3 * dd * g, k + 1e-9) * LogValue::from_log((g - t) * l1);
  return std::max(first, second, [](const LogValue& x, const LogValue& y) { return x < y; });
}

LogValue family_bound_a1(int d, double g, double t, double phi, double c, double size_y, double m_phi) {
  const double dd = d;
  if (!(phi >= 1 && phi <= dd - 1) || !(c > 0) || g < 0 || t < 0 || !(size_y > 0) || m_phi < 0)
    throw PreconditionError("family_bound_a1: inputs out of range");
  const double ld = std::log(dd);
  const double expo = 78 * g * c * ld * ld / (phi * dd) + 78 * g * ld / std::pow(dd, c * m_phi / (phi * dd)) +
                      78 * t * ld * ld / (dd - phi);
  const LogValue omega_choices = binomial_prefix_sum(3 * g * c * ld / phi, 3 * t * c * ld / phi + 1e-9);
  const LogValue walk_choices = binomial_prefix_sum(dd * g, dd * t / (phi * (dd - phi)) + 1e-9);
  return LogValue::from_log(std::log(size_y) + expo) * omega_choices * walk_choices;
}

LogValue family_bound_a2(double x, double t, double psi, double c, int d) {
  if (!(psi > 0) || d < 1) throw PreconditionError("family_bound_a2 needs psi > 0 and d >= 1");
  return LogValue::from_log(c * x / d + c * t * std::log(static_cast<double>(d)) / psi);
}

AggregateBounds aggregate_bounds(double lambda, int d, double a, double g, int m, double c_prime) {
  if (!(lambda > 0)) throw NonpositiveLambda("lambda must be positive");
  const double dd = d;
  if (d < 2 || a < 0 || g < a || a > std::ldexp(1.0, d - 2)) throw PreconditionError("aggregate_bounds: a, g out of range");
  if (m < 1 || m > dd / std::sqrt(std::log(dd))) throw PreconditionError("aggregate_bounds: m out of range");
  const double l1 = std::log1p(lambda);
  AggregateBounds b;
  b.lemma11_rhs = LogValue::from_log(dd * std::log(2.0) + g * l1 - c_prime * (g - a) * std::log(dd) / std::pow(dd, 2.0 / 3.0));
  b.cor12_rhs = LogValue::from_log((m - 1) * (1 + 2 * std::log(dd)) + m * std::log(lambda) + 2.0 * m * (m - 1) * l1 +
                                   dd * std::log(2.0) - m * dd * l1);
  return b;
}

GammaChoice assembled_gamma(double lambda, int d, double psi) {
  const double dd = d;
  const double l1 = std::log1p(lambda);
  GammaChoice c;
  c.gamma = (l1 - 6 * psi * std::log(dd) / (dd - psi)) / (l1 + 3 * std::log(dd));
  c.lower_limit = -2 * psi / (dd - psi);
  c.admissible = c.gamma > c.lower_limit && c.gamma <= 1;
  return c;
}

}  // namespace hclab
