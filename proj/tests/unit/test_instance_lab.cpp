#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "regtsp/corpus.hpp"
#include "regtsp/generators.hpp"
#include "regtsp/oracles.hpp"
#include "regtsp/regular_decompose.hpp"
#include "support.hpp"

using namespace regtsp;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

double log_big(const cpp_int& x) {
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 60) return std::log(x.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits - 60);
  return std::log(cpp_int(x >> shift).convert_to<double>()) + shift * std::log(2.0);
}

// ln f from the exact rational [k^k / (k!)^2]^n / 2^(k-1).
double f_log_rational(unsigned n, unsigned k) {
  cpp_int fact = 1;
  for (unsigned i = 2; i <= k; ++i) fact *= i;
  const cpp_rational base(boost::multiprecision::pow(cpp_int(k), k), fact * fact);
  cpp_rational f = 1;
  for (unsigned i = 0; i < n; ++i) f *= base;
  f /= cpp_rational(boost::multiprecision::pow(cpp_int(2), k - 1));
  return log_big(numerator(f)) - log_big(denominator(f));
}

unsigned girth(const Graph& g) {
  unsigned best = UINT32_MAX;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    std::vector<int> dist(g.num_vertices(), -1), parent(g.num_vertices(), -1);
    std::vector<Vertex> queue{s};
    dist[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Vertex u = queue[i];
      for (const auto& inc : g.neighbors(u)) {
        const Vertex w = inc.neighbor;
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = static_cast<int>(u);
          queue.push_back(w);
        } else if (parent[u] != static_cast<int>(w)) {
          best = std::min<unsigned>(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("random regular generator") {
  SUBCASE("n = 4, k = 3 is K4") {
    const Graph g = gen_random_regular(4, 3, 1);
    CHECK(format_graph(g) == format_graph(complete_graph(4)));
  }
  SUBCASE("simple, connected, regular") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      for (auto [n, k] : {std::pair{10u, 3u}, {30u, 4u}, {31u, 6u}, {40u, 20u}, {64u, 33u}}) {
        const Graph g = gen_random_regular(n, k, seed);
        CHECK(g.regular_degree() == k);
        CHECK(g.is_connected());
        CHECK(g.num_edges() == std::size_t{n} * k / 2);
        const Graph again = parse_graph(format_graph(g));  // re-validates simplicity
        CHECK(again.num_edges() == g.num_edges());
      }
    }
  }
  SUBCASE("same seed, same graph") {
    CHECK(format_graph(gen_random_regular(100, 7, 9)) == format_graph(gen_random_regular(100, 7, 9)));
    CHECK(format_graph(gen_random_regular(100, 7, 9)) != format_graph(gen_random_regular(100, 7, 10)));
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(gen_random_regular(5, 3, 1), Error);
    CHECK_THROWS_AS(gen_random_regular(4, 4, 1), Error);
    CHECK_THROWS_AS(gen_random_regular(10, 2, 1), Error);
  }
}

TEST_CASE("named families") {
  CHECK(cycle_graph(6).regular_degree() == 2u);
  CHECK(cycle_graph(6).num_edges() == 6);
  const Graph q3 = hypercube(3);
  CHECK(q3.num_vertices() == 8);
  CHECK(q3.regular_degree() == 3u);
  CHECK(girth(q3) == 4);
  const Graph p = petersen();
  CHECK(p.num_vertices() == 10);
  CHECK(p.num_edges() == 15);
  CHECK(p.regular_degree() == 3u);
  CHECK(girth(p) == 5);
  CHECK(complete_graph(7).regular_degree() == 6u);
  const std::vector<unsigned> offsets{1, 3};
  CHECK(circulant(10, offsets).regular_degree() == 4u);
  const std::vector<unsigned> half{1, 5};
  CHECK(circulant(10, half).regular_degree() == 3u);

  const std::vector<unsigned> six{6};
  CHECK(format_graph(gen_named("cycle", six)) == format_graph(cycle_graph(6)));
  CHECK(gen_named("petersen", {}).num_edges() == 15);
  CHECK_THROWS_AS(gen_named("torus", six), Error);
  CHECK_THROWS_AS(gen_named("petersen", six), Error);
  const std::vector<unsigned> two{2};
  CHECK_THROWS_AS(gen_named("cycle", two), Error);
}

TEST_CASE("relabeling keeps the graph up to isomorphism invariants") {
  const Graph g = gen_random_regular(50, 5, 2);
  const Graph h = relabel_randomly(g, 8);
  CHECK(h.regular_degree() == 5u);
  CHECK(h.num_edges() == g.num_edges());
  CHECK(girth(h) == girth(g));
  CHECK(format_graph(h) != format_graph(g));
}

TEST_CASE("held-karp") {
  CHECK(held_karp_opt(cycle_graph(3)) == 3);
  CHECK(held_karp_opt(complete_graph(4)) == 4);
  CHECK(held_karp_opt(petersen()) == 11);
  CHECK(test::permutation_search_opt(petersen()) == 11);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = seed % 2 ? gen_random_regular(8, 3, seed) : gen_random_regular(9, 4, seed);
    CHECK(held_karp_opt(g) == test::permutation_search_opt(g));
  }
  const Graph path = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(held_karp_opt(path) == test::permutation_search_opt(path));
  CHECK(held_karp_opt(path) == 6);
  CHECK_THROWS_AS(held_karp_opt(cycle_graph(16)), Error);
}

TEST_CASE("cycle-cover enumeration") {
  using Census = std::map<std::size_t, std::size_t>;
  const Digraph c3 = bidirect(cycle_graph(3));
  CHECK(enumerate_cycle_covers(c3).size() == 2);
  CHECK(count_covers_by_cycles(enumerate_cycle_covers(c3)) == Census{{1, 2}});
  const Digraph c4 = bidirect(cycle_graph(4));
  CHECK(count_covers_by_cycles(enumerate_cycle_covers(c4)) == Census{{1, 2}, {2, 2}});
  const Digraph k4 = bidirect(complete_graph(4));
  const auto covers = enumerate_cycle_covers(k4);
  CHECK(covers.size() == 9);
  CHECK(count_covers_by_cycles(covers) == Census{{1, 6}, {2, 3}});

  for (const auto& d : {c3, c4, k4, bidirect(petersen()), regular_subgraph(bidirect(petersen()), 2),
                        bidirect(hypercube(3)), regular_subgraph(bidirect(complete_graph(7)), 4),
                        bidirect(gen_random_regular(10, 4, 3))}) {
    const auto brute = test::brute_force_census(d);
    CHECK(cycle_cover_census(d) == brute);
    if (d.num_vertices() <= 8) CHECK(count_covers_by_cycles(enumerate_cycle_covers(d)) == brute);
    for (const auto& cover : enumerate_cycle_covers(d)) CHECK(test::is_cycle_cover(d, cover.arc_ids()));
  }
  CHECK_THROWS_AS(enumerate_cycle_covers(bidirect(cycle_graph(13))), Error);
}

TEST_CASE("counting bound") {
  CHECK(lemma4_bound(4, 3, 2) == 54);
  CHECK(lemma4_bound(4, 2, 1) == 32);
  CHECK(lemma4_bound(3, 2, 1) == 12);
  CHECK(lemma4_bound(40, 16, 20) == cpp_int("137846528820") * boost::multiprecision::pow(cpp_int(16), 20));
  CHECK_THROWS_AS(lemma4_bound(4, 3, 0), Error);
  CHECK_THROWS_AS(lemma4_bound(4, 3, 3), Error);

  for (const auto& d : {bidirect(cycle_graph(3)), bidirect(cycle_graph(4)), bidirect(complete_graph(4)),
                        regular_subgraph(bidirect(petersen()), 2), bidirect(petersen())}) {
    for (const auto& [r, count] : test::brute_force_census(d)) {
      CHECK(cpp_int(count) <= lemma4_bound(d.num_vertices(), *d.regular_degree(), static_cast<unsigned>(r)));
    }
  }
}

TEST_CASE("f_log") {
  for (unsigned n : {1u, 5u, 100u}) CHECK(f_log(n, 1) == 0.0);
  CHECK(f_log(4, 2) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(f_log(3, 2) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  for (unsigned k = 1; k <= 16; ++k) {
    for (unsigned n = 1; n <= 16; ++n) {
      const double want = f_log_rational(n, k);
      const double got = f_log(n, k);
      if (want == 0) {
        CHECK(std::abs(got) < 1e-12);
      } else {
        CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
      }
    }
  }
  CHECK_THROWS_AS(f_log(0, 2), Error);
}

TEST_CASE("cycle threshold") {
  const auto a = cycle_threshold(1000, 16);
  CHECK(a.value == doctest::Approx(1262.3).epsilon(1e-4));
  CHECK(a.vacuous);
  const auto b = cycle_threshold(10000, 2048);
  CHECK(b.value == doctest::Approx(3.5 * 10000 / std::log(2048.0)));
  CHECK(std::ceil(b.value) == 4591);
  CHECK_FALSE(b.vacuous);
  // Vacuous exactly when ln k <= 7, i.e. k <= 1096.
  CHECK(cycle_threshold(5000, 1096).vacuous);
  CHECK_FALSE(cycle_threshold(5000, 1097).vacuous);
  CHECK_THROWS_AS(cycle_threshold(10, 1), Error);
}

TEST_CASE("coloring distribution stays within the probability cap") {
  const auto c3 = coloring_distribution_test(bidirect(cycle_graph(3)), 100000, 1);
  CHECK(c3.counts.size() == 2);
  CHECK(c3.f == doctest::Approx(0.5));
  CHECK(c3.within_bound);
  CHECK(c3.max_frequency == doctest::Approx(0.5).epsilon(0.02));

  const auto c4 = coloring_distribution_test(bidirect(cycle_graph(4)), 100000, 2);
  CHECK(c4.counts.size() == 4);
  CHECK(c4.within_bound);
  for (const auto& [col, count] : c4.counts) CHECK(count / 1e5 == doctest::Approx(0.25).epsilon(0.04));

  const auto k4 = coloring_distribution_test(regular_subgraph(bidirect(complete_graph(4)), 2), 100000, 3);
  CHECK(k4.within_bound);
  CHECK(k4.max_frequency <= 0.5 + 4 * std::sqrt(0.5 / 1e5));

  const auto comp = coloring_distribution_test(bidirect(cycle_graph(4)), 10000, 4,
                                               {.flips = FlipGranularity::kPerComponent, .audit_levels = false});
  CHECK(comp.counts.size() == 2);
  CHECK(comp.within_bound);

  CHECK_THROWS_AS(coloring_distribution_test(bidirect(cycle_graph(7)), 10000, 1), Error);
  CHECK_THROWS_AS(coloring_distribution_test(bidirect(cycle_graph(4)), 100, 1), Error);
}

TEST_CASE("standard corpus") {
  const auto corpus = standard_corpus();
  std::set<std::string> names;
  for (const auto& e : corpus) {
    CHECK(e.graph.num_vertices() <= 12);
    CHECK(e.graph.regular_degree().has_value());
    CHECK(e.graph.is_connected());
    CHECK(names.insert(e.family + "/" + e.name).second);
  }
  CHECK(names.count("petersen/petersen") == 1);
  CHECK(names.count("complete/k4") == 1);
}

TEST_CASE("corpus files round trip with oracle reports") {
  const auto dir = std::filesystem::temp_directory_path() / "regtsp_corpus_test";
  std::filesystem::remove_all(dir);
  std::vector<CorpusEntry> some;
  for (auto& e : standard_corpus()) {
    if (e.name == "c4" || e.name == "k4" || e.name == "petersen" || e.name == "k6") some.push_back(e);
  }
  write_corpus(dir.string(), some, true);
  const auto back = read_corpus(dir.string());
  REQUIRE(back.size() == some.size());
  for (const auto& e : back) {
    std::ifstream in(dir / e.family / (e.name + ".oracle.json"));
    const auto j = nlohmann::json::parse(in);
    CHECK(j["n"] == e.graph.num_vertices());
    if (e.name == "petersen") {
      CHECK(j["optimum"] == 11);
      CHECK(j["reduced_k"] == 2);
      CHECK(j.contains("reduced_cover_census"));
    }
    if (e.name == "k4") CHECK(j["cover_census"] == nlohmann::json{{"1", 6}, {"2", 3}});
    if (e.name == "c4") CHECK(!j.contains("reduced_k"));
  }
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_corpus(dir.string()), Error);
}
