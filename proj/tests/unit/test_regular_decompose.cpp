#include <doctest.h>

#include <set>

#include "regtsp/generators.hpp"
#include "regtsp/regular_decompose.hpp"
#include "support.hpp"

using namespace regtsp;

namespace {

std::vector<std::size_t> degrees(const BipartiteMultigraph& b, std::span<const std::uint32_t> ids) {
  std::vector<std::size_t> deg(b.n_left() + b.n_right(), 0);
  for (auto id : ids) {
    for (std::size_t i = 0; i < b.num_edges(); ++i) {
      if (b.ids()[i] != id) continue;
      ++deg[b.edges()[i].left];
      ++deg[b.n_left() + b.edges()[i].right];
    }
  }
  return deg;
}

bool all_equal(const std::vector<std::size_t>& v, std::size_t x) {
  return std::all_of(v.begin(), v.end(), [&](std::size_t y) { return y == x; });
}

// Cycles of a 2-regular bipartite graph by walking edges.
std::vector<std::size_t> cycle_lengths(const BipartiteMultigraph& b) {
  std::vector<char> used(b.num_edges(), 0);
  std::vector<std::size_t> lengths;
  for (std::size_t s = 0; s < b.num_edges(); ++s) {
    if (used[s]) continue;
    std::size_t len = 0;
    std::uint32_t e = static_cast<std::uint32_t>(s);
    Vertex at = b.edges()[e].left;
    while (!used[e]) {
      used[e] = 1;
      ++len;
      const Vertex next = at == b.edges()[e].left ? b.n_left() + b.edges()[e].right : b.edges()[e].left;
      for (auto f : b.incident(next)) {
        if (!used[f]) {
          e = f;
          break;
        }
      }
      at = next;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

// Random even-regular bipartite multigraph: a union of random perfect matchings.
BipartiteMultigraph random_regular_bipartite(Vertex n, unsigned k, Rng& rng) {
  std::vector<std::uint32_t> ids;
  std::vector<BipartiteEdge> edges;
  for (unsigned m = 0; m < k; ++m) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    for (Vertex i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    for (Vertex v = 0; v < n; ++v) {
      ids.push_back(static_cast<std::uint32_t>(edges.size()));
      edges.push_back({v, perm[v]});
    }
  }
  return BipartiteMultigraph::from_edges(n, n, std::move(ids), std::move(edges));
}

void check_partition(const BipartiteMultigraph& b, const std::vector<IdSet>& parts, unsigned k) {
  REQUIRE(parts.size() == k);
  std::multiset<std::uint32_t> all;
  for (const auto& p : parts) {
    CHECK(std::is_sorted(p.begin(), p.end()));
    CHECK(all_equal(degrees(b, p), 1));
    all.insert(p.begin(), p.end());
  }
  CHECK(all.size() == b.num_edges());
  CHECK(std::set<std::uint32_t>(all.begin(), all.end()).size() == b.num_edges());
}

}  // namespace

TEST_CASE("bipartite_encode of bidirected C3 is a single 6-cycle") {
  const auto b = bipartite_encode(bidirect(cycle_graph(3)));
  CHECK(b.n_left() == 3);
  CHECK(b.n_right() == 3);
  CHECK(b.regular_degree() == 2u);
  CHECK(cycle_lengths(b) == std::vector<std::size_t>{6});
}

TEST_CASE("bipartite_encode of bidirected C4 is two 4-cycles") {
  const auto b = bipartite_encode(bidirect(cycle_graph(4)));
  CHECK(b.regular_degree() == 2u);
  CHECK(cycle_lengths(b) == std::vector<std::size_t>{4, 4});
}

TEST_CASE("bipartite_encode keeps arc ids as edge ids") {
  const Digraph d = Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}});
  const auto b = bipartite_encode(d);
  CHECK(b.regular_degree() == 1u);
  REQUIRE(b.num_edges() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(b.ids()[i] == d.id(i));
    CHECK(b.edges()[i].left == d.arc(i).tail);
    CHECK(b.edges()[i].right == d.arc(i).head);
  }
}

TEST_CASE("euler_split of an even cycle gives two perfect matchings") {
  for (Vertex n : {3u, 4u}) {
    const auto b = bipartite_encode(bidirect(cycle_graph(n)));
    const auto [x, y] = euler_split(b);
    CHECK(x.size() == n);
    CHECK(y.size() == n);
    CHECK(all_equal(degrees(b, x), 1));
    CHECK(all_equal(degrees(b, y), 1));
  }
}

TEST_CASE("euler_split of bidirected K5 gives two 2-regular halves") {
  const auto b = bipartite_encode(bidirect(complete_graph(5)));
  const auto [x, y] = euler_split(b);
  CHECK(all_equal(degrees(b, x), 2));
  CHECK(all_equal(degrees(b, y), 2));
  IdSet both = x;
  both.insert(both.end(), y.begin(), y.end());
  std::sort(both.begin(), both.end());
  CHECK(both == IdSet(b.ids().begin(), b.ids().end()));
}

TEST_CASE("euler_split halves every degree of random even-regular inputs") {
  Rng rng(5);
  for (unsigned k : {2u, 4u, 6u, 8u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto b = random_regular_bipartite(20 + trial, k, rng);
      const auto [x, y] = euler_split(b);
      CHECK(all_equal(degrees(b, x), k / 2));
      CHECK(all_equal(degrees(b, y), k / 2));
    }
  }
}

TEST_CASE("euler_split rejects odd degrees") {
  const auto b = bipartite_encode(bidirect(complete_graph(4)));
  CHECK_THROWS_AS(euler_split(b), Error);
}

TEST_CASE("peel_matching") {
  SUBCASE("a perfect matching peels to itself") {
    const auto b = bipartite_encode(Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK(peel_matching(b) == IdSet{0, 1, 2});
  }
  SUBCASE("a 6-cycle peels to one alternation class") {
    const auto b = bipartite_encode(bidirect(cycle_graph(3)));
    const auto m = peel_matching(b);
    REQUIRE(m.has_value());
    CHECK(m->size() == 3);
    CHECK(all_equal(degrees(b, *m), 1));
  }
  SUBCASE("bidirected K4 leaves a regular(2) residual") {
    const auto b = bipartite_encode(bidirect(complete_graph(4)));
    const auto m = peel_matching(b);
    REQUIRE(m.has_value());
    CHECK(m->size() == 4);
    CHECK(all_equal(degrees(b, *m), 1));
    IdSet rest;
    std::set_difference(b.ids().begin(), b.ids().end(), m->begin(), m->end(), std::back_inserter(rest));
    CHECK(b.subgraph(rest).regular_degree() == 2u);
  }
  SUBCASE("no perfect matching when the input is not regular") {
    const auto b = BipartiteMultigraph::from_edges(2, 2, {0, 1}, {{0, 0}, {1, 0}});
    CHECK_FALSE(peel_matching(b).has_value());
  }
}

TEST_CASE("decompose_matchings examples") {
  {
    const auto b = bipartite_encode(Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}}));
    check_partition(b, decompose_matchings(b), 1);
  }
  {
    const auto b = bipartite_encode(bidirect(cycle_graph(4)));
    const auto parts = decompose_matchings(b);
    check_partition(b, parts, 2);
    for (const auto& p : parts) CHECK(p.size() == 4);
  }
  {
    const auto b = bipartite_encode(bidirect(complete_graph(4)));
    const auto parts = decompose_matchings(b);
    check_partition(b, parts, 3);
    for (const auto& p : parts) CHECK(p.size() == 4);
  }
}

TEST_CASE("decompose_matchings partitions random regular inputs for k = 1..8") {
  Rng rng(11);
  for (unsigned k = 1; k <= 8; ++k) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto b = random_regular_bipartite(15 + 3 * trial, k, rng);
      check_partition(b, decompose_matchings(b), k);
    }
  }
}

TEST_CASE("regular_subgraph") {
  SUBCASE("k_target = k keeps every arc") {
    const Digraph d = bidirect(petersen());
    const Digraph s = regular_subgraph(d, 3);
    CHECK(std::vector<ArcId>(s.ids().begin(), s.ids().end()) == std::vector<ArcId>(d.ids().begin(), d.ids().end()));
  }
  SUBCASE("bidirected K4 down to 2") {
    const Digraph s = regular_subgraph(bidirect(complete_graph(4)), 2);
    CHECK(s.num_vertices() == 4);
    CHECK(s.num_arcs() == 8);
    CHECK(test::is_regular(s, 2));
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(regular_subgraph(bidirect(complete_graph(4)), 0), Error);
    CHECK_THROWS_AS(regular_subgraph(bidirect(complete_graph(4)), 4), Error);
  }
  SUBCASE("subset of the input arcs with the target degree") {
    for (unsigned k : {3u, 5u, 6u, 7u, 9u}) {
      const Digraph d = bidirect(gen_random_regular(40, k, k));
      for (unsigned t = 1; t <= k; ++t) {
        const Digraph s = regular_subgraph(d, t);
        CHECK(test::is_regular(s, t));
        CHECK(s.regular_degree() == t);
        for (std::size_t i = 0; i < s.num_arcs(); ++i) {
          const auto index = d.index_of(s.id(i));
          REQUIRE(index.has_value());
          CHECK(d.arc(*index) == s.arc(i));
        }
      }
    }
  }
}

TEST_CASE("regular_subgraph keeps the first matchings of the decomposition") {
  const Digraph d = bidirect(gen_random_regular(24, 7, 2));
  const auto parts = decompose_matchings(bipartite_encode(d));
  IdSet expected;
  for (unsigned i = 0; i < 4; ++i) expected.insert(expected.end(), parts[i].begin(), parts[i].end());
  std::sort(expected.begin(), expected.end());
  const Digraph s = regular_subgraph(d, 4);
  CHECK(IdSet(s.ids().begin(), s.ids().end()) == expected);
}
