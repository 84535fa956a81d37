#include <doctest.h>

#include <filesystem>
#include <string>

#include "regtsp/generators.hpp"
#include "regtsp/graph.hpp"
#include "regtsp/rng.hpp"
#include "support.hpp"

using namespace regtsp;

namespace {

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse_graph reads a triangle as regular(2)") {
  const Graph g = parse_graph("3 3\n0 1\n1 2\n0 2");
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.regular_degree() == 2u);
}

TEST_CASE("parse_graph skips comments and blank lines") {
  const Graph g = parse_graph("# triangle\n3 3\n\n0 1\n# middle\n1 2\n2 0\n");
  CHECK(g.num_edges() == 3);
  CHECK(g.has_edge(0, 2));
}

TEST_CASE("parse_graph reports errors with line numbers") {
  CHECK(error_of([] { parse_graph("2 2\n0 1\n0 1"); }).find("line 3") != std::string::npos);
  CHECK(error_of([] { parse_graph("2 2\n0 1\n1 0"); }).find("line 3") != std::string::npos);
  CHECK(error_of([] { parse_graph("3 1\n1 1"); }).find("line 2") != std::string::npos);
  CHECK(error_of([] { parse_graph("3 1\n0 3"); }).find("line 2") != std::string::npos);
  CHECK(error_of([] { parse_graph("3 1\n0 x"); }).find("line 2") != std::string::npos);
  CHECK(error_of([] { parse_graph("3 2\n0 1"); }) != "");
  CHECK_THROWS_AS(parse_graph(""), Error);
}

TEST_CASE("the Petersen graph survives a write and re-parse") {
  const Graph p = petersen();
  const Graph q = parse_graph(format_graph(p));
  CHECK(q.num_vertices() == 10);
  CHECK(q.num_edges() == 15);
  CHECK(q.regular_degree() == 3u);
  CHECK(format_graph(q) == format_graph(p));

  const auto path = std::filesystem::temp_directory_path() / "regtsp_petersen_test.graph";
  write_graph_file(p, path.string());
  CHECK(format_graph(read_graph_file(path.string())) == format_graph(p));
  std::filesystem::remove(path);
}

TEST_CASE("format_graph is canonical") {
  const Graph g = Graph::from_edges(4, {{3, 2}, {1, 0}, {2, 0}});
  CHECK(format_graph(g) == "4 3\n0 1\n0 2\n2 3\n");
}

TEST_CASE("neighbors are sorted by id") {
  const Graph g = Graph::from_edges(4, {{0, 3}, {0, 1}, {0, 2}});
  const auto nb = g.neighbors(0);
  REQUIRE(nb.size() == 3);
  CHECK(nb[0].neighbor == 1);
  CHECK(nb[1].neighbor == 2);
  CHECK(nb[2].neighbor == 3);
  CHECK(g.find_edge(3, 0) == 0u);
  CHECK_FALSE(g.regular_degree().has_value());
}

TEST_CASE("degree sums equal n k for regular graphs") {
  for (const Graph& g : {petersen(), complete_graph(7), hypercube(4), gen_random_regular(30, 5, 3)}) {
    std::size_t sum = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) sum += g.degree(v);
    const unsigned k = *g.regular_degree();
    CHECK(sum == std::size_t{g.num_vertices()} * k);
    CHECK(sum % 2 == 0);
  }
}

TEST_CASE("bidirect doubles every edge and keeps degrees") {
  struct Case {
    Graph g;
    std::size_t arcs;
    unsigned k;
  };
  for (const auto& [g, arcs, k] : {Case{cycle_graph(3), 6, 2}, Case{cycle_graph(4), 8, 2}, Case{complete_graph(4), 12, 3}}) {
    const Digraph d = bidirect(g);
    CHECK(d.num_arcs() == arcs);
    CHECK(d.regular_degree() == k);
    CHECK(test::is_regular(d, k));
    for (std::size_t i = 0; i < d.num_arcs(); ++i) {
      const Edge& e = g.edge(source_edge_of(d.id(i)));
      const Arc& a = d.arc(i);
      CHECK(((a.tail == e.u && a.head == e.v) || (a.tail == e.v && a.head == e.u)));
      CHECK((d.id(i) % 2 == 0 ? a.tail == e.u : a.tail == e.v));
    }
  }
}

TEST_CASE("bidirect keeps per-vertex degree on irregular graphs") {
  const Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  const Digraph d = bidirect(g);
  const auto out = test::in_out_degrees(d, true);
  const auto in = test::in_out_degrees(d, false);
  for (Vertex v = 0; v < 4; ++v) {
    CHECK(out[v] == g.degree(v));
    CHECK(in[v] == g.degree(v));
  }
}

TEST_CASE("cover_from_arcs on a directed triangle") {
  const Digraph d = Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}});
  const std::vector<ArcId> ids{0, 1, 2};
  const CycleCover c = cover_from_arcs(d, ids);
  CHECK(c.num_cycles() == 1);
  CHECK(c.successor()[0] == 1);
  CHECK(c.successor()[2] == 0);
}

TEST_CASE("cover_from_arcs on bidirected C4 2-cycles") {
  const Digraph d = bidirect(cycle_graph(4));
  // Edges of C4 are {0,1},{0,3},{1,2},{2,3}; pick 0<->1 and 2<->3.
  const Graph c4 = cycle_graph(4);
  std::vector<ArcId> ids;
  for (EdgeId e = 0; e < c4.num_edges(); ++e) {
    const Edge& ed = c4.edge(e);
    if ((ed.u == 0 && ed.v == 1) || (ed.u == 2 && ed.v == 3)) {
      ids.push_back(2 * e);
      ids.push_back(2 * e + 1);
    }
  }
  std::sort(ids.begin(), ids.end());
  const CycleCover c = cover_from_arcs(d, ids);
  CHECK(c.num_cycles() == 2);
  CHECK(test::orbits({c.successor().begin(), c.successor().end()}) == 2);
  CHECK(c.cycle_of()[0] == c.cycle_of()[1]);
  CHECK(c.cycle_of()[2] == c.cycle_of()[3]);
  CHECK(c.cycle_of()[0] != c.cycle_of()[2]);
}

TEST_CASE("cover_from_arcs rejects a vertex without an out-arc") {
  const Digraph d = Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}});
  const std::vector<ArcId> ids{0, 1};
  CHECK_THROWS_AS(cover_from_arcs(d, ids), Error);
}

TEST_CASE("random fixed-point-free permutations are accepted, others rejected") {
  const Vertex n = 9;
  const Digraph d = bidirect(complete_graph(n));
  auto arc_id = [&](Vertex u, Vertex v) {
    for (auto index : d.out_arcs(u)) {
      if (d.arc(index).head == v) return d.id(index);
    }
    FAIL("missing arc");
    return ArcId{0};
  };
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Vertex> succ(n);
    std::iota(succ.begin(), succ.end(), Vertex{0});
    for (Vertex i = n - 1; i > 0; --i) std::swap(succ[i], succ[rng.below(i + 1)]);
    bool fixed_point = false;
    for (Vertex v = 0; v < n; ++v) fixed_point = fixed_point || succ[v] == v;

    std::vector<ArcId> ids;
    if (fixed_point) {
      // Not a cover: send the fixed point anywhere, duplicating a head.
      for (Vertex v = 0; v < n; ++v) ids.push_back(arc_id(v, succ[v] == v ? (v + 1) % n : succ[v]));
      std::sort(ids.begin(), ids.end());
      CHECK_THROWS_AS(cover_from_arcs(d, ids), Error);
      continue;
    }
    for (Vertex v = 0; v < n; ++v) ids.push_back(arc_id(v, succ[v]));
    std::sort(ids.begin(), ids.end());
    const CycleCover c = cover_from_arcs(d, ids);
    CHECK(c.num_cycles() == test::orbits(succ));
    CHECK(count_cycles(succ) == test::orbits(succ));

    // Retarget one vertex to a head already used: two in-arcs there.
    std::vector<ArcId> bad;
    for (Vertex v = 0; v < n; ++v) bad.push_back(arc_id(v, v == 0 ? succ[1] == 0 ? succ[2] : succ[1] : succ[v]));
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    CHECK_THROWS_AS(cover_from_arcs(d, bad), Error);
  }
}

TEST_CASE("cycles are listed from their smallest vertex") {
  const Digraph d = Digraph::from_arcs(5, {{0, 3}, {3, 0}, {1, 4}, {4, 2}, {2, 1}});
  const std::vector<ArcId> ids{0, 1, 2, 3, 4};
  const auto cycles = cover_from_arcs(d, ids).cycles();
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0] == std::vector<Vertex>{0, 3});
  CHECK(cycles[1] == std::vector<Vertex>{1, 4, 2});
}

TEST_CASE("connectivity") {
  CHECK(petersen().is_connected());
  CHECK_FALSE(Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}).is_connected());
}
