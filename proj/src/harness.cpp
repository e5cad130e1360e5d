#include <ostream>

#include "hclab/containers.hpp"
#include "hclab/errors.hpp"
#include "hclab/linked.hpp"
#include "hclab/random.hpp"

namespace hclab {

std::vector<VertexSet> all_small_two_linked(int d) {
  if (d > 5) throw DimensionTooLarge("exhaustive source sets are limited to d <= 5");
  const CubeGraph g(d);
  const auto evens = g.side_vertices(Parity::Even);
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << evens.size()); ++mask) {
    std::vector<Vertex> members;
    for (std::size_t i = 0; i < evens.size(); ++i)
      if (mask >> i & 1) members.push_back(evens[i]);
    if (!is_k_linked(members, 2)) continue;
    VertexSet a(d, members);
    if (is_small(g, a)) out.push_back(std::move(a));
  }
  return out;
}

std::vector<VertexSet> random_small_two_linked(int d, std::size_t count, std::uint64_t seed) {
  const CubeGraph g(d);
  const auto evens = g.side_vertices(Parity::Even);
  const std::size_t max_size = std::size_t{1} << (d >= 2 ? d - 2 : 0);
  Rng rng(seed);
  std::vector<VertexSet> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100 * count + 1000) throw BudgetExceeded("could not draw enough small 2-linked sets");
    const std::size_t target = 1 + rng() % max_size;
    VertexSet a(d);
    a.insert(evens[rng() % evens.size()]);
    while (a.size() < target) {
      std::vector<Vertex> frontier;
      for (Vertex v : evens) {
        if (a.contains(v)) continue;
        bool near = false;
        a.for_each([&](Vertex u) { near = near || hamming(u, v) == 2; });
        if (near) frontier.push_back(v);
      }
      if (frontier.empty()) break;
      a.insert(frontier[rng() % frontier.size()]);
    }
    if (is_small(g, a)) out.push_back(std::move(a));
  }
  return out;
}

bool HarnessResult::all_pass() const {
  if (!failures.empty() || rebuild_mismatches != 0) return false;
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

HarnessResult run_container_harness(int d, const std::vector<VertexSet>& sources, const HarnessOptions& opts) {
  const BipartiteGraph g = BipartiteGraph::hypercube(d);
  const CubeGraph cube(d);
  const int phi = opts.phi > 0 ? opts.phi : d / 2;
  std::vector<int> psis = opts.psis;
  if (psis.empty())
    for (int psi = 1; 2 * psi <= d; ++psi) psis.push_back(psi);
  const std::size_t m_phi = compute_m_phi(g, phi);

  HarnessResult result;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const VertexSet& source = sources[i];
    const Bitset a = to_x_indices(g, source);
    const std::size_t na = neighborhood(cube, source).size();
    const std::size_t cl = closure(cube, source).size();
    HarnessRow base;
    base.d = d;
    base.size = source.size();
    base.a = cl;
    base.g = na;
    base.t = na - cl;

    FirstApproxOptions fo;
    fo.phi = phi;
    fo.c = opts.c;
    fo.seed = opts.seed + 0x9E3779B97F4A7C15ULL * (i + 1);
    fo.m_phi = m_phi;
    ContainerPair first;
    try {
      auto [pair, tr] = first_approx(g, a, fo);
      first = std::move(pair);
      result.total_retries += tr.retries;
      if (rebuild_f_prime(g, tr) != tr.f_prime) {
        ++result.rebuild_mismatches;
        result.failures.push_back("F' rebuild mismatch for A = " + source.to_string());
      }
    } catch (const Error& e) {
      result.failures.push_back("first_approx failed for A = " + source.to_string() + ": " + e.what());
      continue;
    }
    const StageCheck c1 = check_first_stage(g, a, first);
    HarnessRow row = base;
    row.phi_or_psi = phi;
    row.stage = Stage::First;
    row.pass = c1.pass;
    row.slack_outer = c1.slack_outer;
    row.slack_inner = c1.slack_inner;
    row.f_size = first.outer.count();
    row.s_size = first.inner.count();
    result.rows.push_back(row);
    for (const auto& f : c1.failures) result.failures.push_back("first stage, A = " + source.to_string() + ": " + f);

    for (int psi : psis) {
      const ContainerPair second = second_approx(g, a, first, psi);
      result.total_repairs += second.repairs_added + second.repairs_removed;
      const StageCheck c2 = check_second_stage(g, a, second);
      HarnessRow r2 = base;
      r2.phi_or_psi = psi;
      r2.stage = Stage::Second;
      r2.pass = c2.pass;
      r2.slack_outer = c2.slack_outer;
      r2.slack_inner = c2.slack_inner;
      r2.f_size = second.outer.count();
      r2.s_size = second.inner.count();
      result.rows.push_back(r2);
      for (const auto& f : c2.failures)
        result.failures.push_back("second stage psi=" + std::to_string(psi) + ", A = " + source.to_string() + ": " + f);
    }
  }
  return result;
}

void write_harness_csv(std::ostream& out, const HarnessResult& r) {
  out << kHarnessCsvHeader << '\n';
  for (const auto& row : r.rows) {
    out << row.d << ',' << row.size << ',' << row.a << ',' << row.g << ',' << row.t << ',' << row.phi_or_psi << ','
        << to_string(row.stage) << ',' << (row.pass ? "true" : "false") << ',' << format_fixed(row.slack_outer, 10)
        << ',' << format_fixed(row.slack_inner, 10) << ',' << row.f_size << ',' << row.s_size << '\n';
  }
  if (!out) throw IoError("failed writing harness CSV");
}

}  // namespace hclab
