#include <doctest.h>

#include <cmath>
#include <set>

#include "hclab/cube.hpp"
#include "hclab/errors.hpp"
#include "hclab/isoperimetry.hpp"
#include "hclab/linked.hpp"
#include "oracles.hpp"

using namespace hclab;

namespace {

std::vector<std::uint64_t> sorted(const VertexSet& s) {
  auto m = s.members();
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

TEST_CASE("vertex parsing and parity") {
  CHECK(parse_vertex("0110") == 6);
  CHECK(format_vertex(6, 4) == "0110");
  CHECK(parity_of(parse_vertex("011")) == Parity::Even);
  CHECK(parity_of(parse_vertex("111")) == Parity::Odd);
  CHECK(hamming(0b000, 0b111) == 3);
}

TEST_CASE("neighbourhood and closure on small cubes") {
  const CubeGraph g3(3);
  CHECK(sorted(neighborhood(g3, VertexSet::parse(3, {"000"}))) == std::vector<std::uint64_t>{1, 2, 4});
  CHECK(sorted(closure(g3, VertexSet::parse(3, {"000"}))) == std::vector<std::uint64_t>{0});

  const CubeGraph g2(2);
  // Both even vertices of Q_2 see the whole odd side.
  CHECK(sorted(closure(g2, VertexSet::parse(2, {"00"}))) == std::vector<std::uint64_t>{0, 3});
  CHECK_FALSE(is_small(g2, VertexSet::parse(2, {"00"})));
  CHECK(is_small(g3, VertexSet::parse(3, {"000"})));
  CHECK_FALSE(is_small(CubeGraph(4), VertexSet::whole_side(4, Parity::Even)));
  CHECK_THROWS_AS(closure(g3, VertexSet::parse(3, {"000", "001"})), MixedSideError);
}

TEST_CASE("closure laws against the direct oracle") {
  const int d = 4;
  const CubeGraph g(d);
  const auto evens = g.side_vertices(Parity::Even);
  for (std::uint64_t s = 1; s < (1u << evens.size()); ++s) {
    std::vector<Vertex> m;
    for (std::size_t i = 0; i < evens.size(); ++i)
      if ((s >> i) & 1) m.push_back(evens[i]);
    const VertexSet a(d, std::span<const Vertex>(m));
    const auto cl = closure(g, a);
    REQUIRE(sorted(cl) == oracle::closure(d, m));
    CHECK(a.is_subset_of(cl));
    CHECK(neighborhood(g, cl) == neighborhood(g, a));
    CHECK(closure(g, cl) == cl);
    CHECK(sorted(neighborhood(g, a)) == oracle::neighbourhood(d, m));
    CHECK(neighborhood_size(g, m) == neighborhood(g, a).size());
  }
}

TEST_CASE("two-components") {
  const CubeGraph g3(3);
  auto one = two_components(g3, VertexSet::parse(3, {"000", "011"}));
  CHECK(one.k() == 1);
  CHECK(one.cl() == 2);
  // 000 and 111 lie on different sides of Q_3; the separated pair is taken in Q_4.
  auto two = two_components(CubeGraph(4), VertexSet::parse(4, {"0000", "1111"}));
  CHECK(two.k() == 2);
  CHECK(two.cl() == 1);

  const CubeGraph g4(4);
  auto three = two_components(g4, VertexSet::parse(4, {"0000", "0011", "1111"}));
  // 0011 and 1111 are at distance 2, so the three vertices form a single part.
  CHECK(three.k() == 1);
  CHECK(three.cl() == 3);
  CHECK(two_components(g4, VertexSet(4)).cl() == 0);
  CHECK_THROWS_AS(two_components(g4, VertexSet::parse(4, {"0000", "0001"})), MixedSideError);
}

TEST_CASE("two-component parts are separated and each 2-linked") {
  const int d = 4;
  const CubeGraph g(d);
  const auto evens = g.side_vertices(Parity::Even);
  for (std::uint64_t s = 0; s < (1u << evens.size()); ++s) {
    std::vector<Vertex> m;
    for (std::size_t i = 0; i < evens.size(); ++i)
      if ((s >> i) & 1) m.push_back(evens[i]);
    const auto dec = two_components(g, VertexSet(d, std::span<const Vertex>(m)));
    std::size_t total = 0;
    for (std::size_t i = 0; i < dec.k(); ++i) {
      total += dec.parts[i].size();
      CHECK(oracle::two_linked(sorted(dec.parts[i])));
      for (std::size_t j = i + 1; j < dec.k(); ++j)
        for (auto u : dec.parts[i].members())
          for (auto v : dec.parts[j].members()) CHECK(hamming(u, v) >= 3);
    }
    CHECK(total == m.size());
    CHECK(oracle::two_linked(m) == (dec.k() <= 1));
    auto sizes = two_component_sizes(m);
    std::sort(sizes.begin(), sizes.end());
    auto expect = dec.sizes;
    std::sort(expect.begin(), expect.end());
    CHECK(sizes == expect);
  }
}

TEST_CASE("k-linked") {
  const CubeGraph g3(3);
  CHECK_FALSE(is_k_linked(g3, VertexSet::parse(3, {"000", "111"}), 2));
  CHECK(is_k_linked(g3, VertexSet::parse(3, {"000", "111"}), 3));
  CHECK(is_k_linked(CubeGraph(4), VertexSet::parse(4, {"0000", "0011", "0101"}), 2));
  CHECK(is_k_linked(g3, VertexSet(3), 2));
}

TEST_CASE("enumerate 2-linked sets") {
  const CubeGraph g3(3);
  CHECK(enumerate_2linked_sets(g3, Parity::Even, 1).size() == 4);
  CHECK(enumerate_2linked_sets(g3, Parity::Even, 2, Vertex{0}).size() == 4);
  CHECK(enumerate_2linked_sets(CubeGraph(2), Parity::Even, 2).size() == 3);

  // Against subset enumeration with a BFS test, d = 4, both sides.
  const CubeGraph g4(4);
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const auto side = g4.side_vertices(p);
    std::size_t expected = 0;
    for (std::uint64_t s = 1; s < (1u << side.size()); ++s) {
      std::vector<std::uint64_t> m;
      for (std::size_t i = 0; i < side.size(); ++i)
        if ((s >> i) & 1) m.push_back(side[i]);
      expected += m.size() <= 4 && oracle::two_linked(m);
    }
    const auto got = enumerate_2linked_sets(g4, p, 4);
    CHECK(got.size() == expected);
    std::set<VertexSet> unique(got.begin(), got.end());
    CHECK(unique.size() == got.size());
  }
}

TEST_CASE("connected subset counts stay below the tree bound") {
  for (int d : {3, 4}) {
    const CubeGraph g(d);
    for (std::size_t n = 1; n <= 4; ++n) {
      LinkedSetQuery q;
      q.k = 1;
      q.size_max = n;
      q.anchor = 0;
      std::size_t count = 0;
      enumerate_linked_sets(g, q, [&](const VertexSet& s) { count += s.size() == n; });
      CHECK(static_cast<double>(count) <= std::pow(std::exp(1.0) * d, static_cast<double>(n - 1)));
    }
  }
  // Two-sets of Q_3 containing 000 at distance <= 2: 3 neighbours plus 3 at distance two.
  LinkedSetQuery q;
  q.size_max = 2;
  q.anchor = 0;
  std::size_t pairs = 0;
  enumerate_linked_sets(CubeGraph(3), q, [&](const VertexSet& s) { pairs += s.size() == 2; });
  CHECK(pairs == 6);
}

TEST_CASE("iso_scan") {
  const CubeGraph g3(3);
  const auto one = iso_scan(g3, Parity::Even, 1);
  CHECK(one.min_boundary == 3);
  const auto two = iso_scan(g3, Parity::Even, 2);
  CHECK(two.min_boundary == 4);
  CHECK(two.scanned == 6);
  CHECK(two.lemma10_ok);
  REQUIRE(two.witness.size() == 2);
  CHECK(hamming(two.witness[0], two.witness[1]) == 2);

  IsoScanOptions sym;
  sym.mode = ScanMode::SymmetryReduced;
  const auto big = iso_scan(CubeGraph(20), Parity::Even, 2, sym);
  CHECK(big.lemma9_ok);
  CHECK(big.min_boundary == 38);

  IsoScanOptions tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(iso_scan(CubeGraph(5), Parity::Even, 4, tiny), BudgetExceeded);
}
