#include "regtsp/tour_io.hpp"

#include <string>

#include "regtsp/long_cycles.hpp"

namespace regtsp {

Tour solve(const Graph& g, std::string_view algo, std::optional<std::uint64_t> seed, bool exact_cost) {
  if (algo != "rand" && algo != "det" && algo != "mst2") {
    fail(ErrorKind::kInput, "unknown algorithm '" + std::string(algo) + "' (expected rand, det or mst2)");
  }
  if (algo == "rand" && !seed) fail(ErrorKind::kInput, "algorithm rand needs a seed");
  if (g.num_vertices() > 2) require_connected_regular(g);

  if (algo == "rand") return randomized_tsp(g, *seed, {.coloring = {}, .exact_cost = exact_cost});
  if (algo == "det") return deterministic_tsp(g, {.long_cycles = {}, .exact_cost = exact_cost});
  return doubled_tree_tsp(g, exact_cost);
}

nlohmann::json tour_to_json(const Tour& tour, bool include_timing) {
  nlohmann::json j;
  j["algo"] = tour.meta.algo;
  j["n"] = tour.order.size();
  j["k_input"] = tour.meta.k_input;
  j["k_used"] = tour.meta.k_used;
  j["seed"] = tour.meta.seed ? nlohmann::json(*tour.meta.seed) : nlohmann::json(nullptr);
  j["order"] = tour.order;
  j["num_cycles"] = tour.meta.num_cycles;
  j["cost_bound"] = tour.cost_bound;
  j["exact_cost"] = tour.exact_cost ? nlohmann::json(*tour.exact_cost) : nlohmann::json(nullptr);
  j["wall_ms"] = include_timing ? nlohmann::json(tour.meta.timings.total_ms) : nlohmann::json(nullptr);
  return j;
}

std::string format_tour_json(const Tour& tour, bool include_timing) {
  return tour_to_json(tour, include_timing).dump() + "\n";
}

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) fail(ErrorKind::kInput, std::string("tour JSON: missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::kInput, std::string("tour JSON: field '") + name + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> nullable_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) fail(ErrorKind::kInput, std::string("tour JSON: missing field '") + name + "'");
  if (j.at(name).is_null()) return std::nullopt;
  return field<T>(j, name);
}

}  // namespace

ClaimedTour parse_tour_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kInput, std::string("tour JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::kInput, "tour JSON: expected an object");
  ClaimedTour t;
  t.algo = field<std::string>(j, "algo");
  t.n = field<std::uint64_t>(j, "n");
  t.k_input = field<std::uint64_t>(j, "k_input");
  t.k_used = field<std::uint64_t>(j, "k_used");
  t.seed = nullable_field<std::uint64_t>(j, "seed");
  t.order = field<std::vector<std::int64_t>>(j, "order");
  t.num_cycles = field<std::uint64_t>(j, "num_cycles");
  t.cost_bound = field<std::uint64_t>(j, "cost_bound");
  t.exact_cost = nullable_field<std::uint64_t>(j, "exact_cost");
  if (!j.contains("wall_ms")) fail(ErrorKind::kInput, "tour JSON: missing field 'wall_ms'");
  return t;
}

VerifyResult verify_tour(const Graph& g, const ClaimedTour& claimed) {
  auto reject = [](std::string why) { return VerifyResult{false, std::move(why)}; };
  const Vertex n = g.num_vertices();
  if (claimed.n != n) return reject("n mismatch");

  if (claimed.order.size() != n) return reject("order not a permutation");
  std::vector<char> seen(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (std::int64_t v : claimed.order) {
    if (v < 0 || v >= static_cast<std::int64_t>(n) || seen[v]) return reject("order not a permutation");
    seen[v] = 1;
    order.push_back(static_cast<Vertex>(v));
  }

  const unsigned k = g.regular_degree().value_or(0);
  if (claimed.k_input != k) return reject("k_input mismatch");

  const std::uint64_t exact = exact_tour_cost(g, order);
  if (claimed.exact_cost && *claimed.exact_cost != exact) return reject("exact_cost mismatch");
  if (exact > claimed.cost_bound) return reject("cost_bound mismatch");

  if (claimed.algo != "rand" && claimed.algo != "det" && claimed.algo != "mst2") return reject("algo unknown");
  if (claimed.algo == "rand" && !claimed.seed) return reject("seed missing");
  const Tour rerun = solve(g, claimed.algo, claimed.seed);
  if (claimed.k_used != rerun.meta.k_used) return reject("k_used mismatch");
  if (claimed.num_cycles != rerun.meta.num_cycles) return reject("num_cycles mismatch");
  if (claimed.cost_bound != rerun.cost_bound) return reject("cost_bound mismatch");
  if (order != rerun.order) return reject("order mismatch");
  return {};
}

}  // namespace regtsp
