#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "regtsp/graph.hpp"
#include "regtsp/tour.hpp"

namespace regtsp {

/// Runs one of "rand", "det", "mst2". `seed` is required for "rand" and
/// ignored otherwise. Throws Error(kInput) on an unknown algorithm or a
/// missing seed, Error(kPrecondition) unless g is connected and regular.
Tour solve(const Graph& g, std::string_view algo, std::optional<std::uint64_t> seed, bool exact_cost = false);

/// Tour JSON: algo, n, k_input, k_used, seed, order, num_cycles, cost_bound,
/// exact_cost, wall_ms. With include_timing false, wall_ms is null so that
/// repeated runs serialize byte-identically.
nlohmann::json tour_to_json(const Tour& tour, bool include_timing = true);
std::string format_tour_json(const Tour& tour, bool include_timing = true);

/// The fields of a Tour JSON document as claimed by whoever wrote it.
/// Order entries stay signed 64-bit so that bad ids survive parsing and are
/// reported by verify_tour rather than by the parser.
struct ClaimedTour {
  std::string algo;
  std::uint64_t n = 0;
  std::uint64_t k_input = 0;
  std::uint64_t k_used = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::int64_t> order;
  std::uint64_t num_cycles = 0;
  std::uint64_t cost_bound = 0;
  std::optional<std::uint64_t> exact_cost;
};

/// Throws Error(kInput) on malformed JSON or missing/mistyped fields.
ClaimedTour parse_tour_json(std::string_view text);

struct VerifyResult {
  bool ok = true;
  /// First failing check, e.g. "order not a permutation".
  std::string failure;
};

/// Checks, in order: n, that order is a permutation, k_input, the exact
/// cost (recomputed; compared when claimed), then re-runs the algorithm
/// with the claimed seed and compares k_used, num_cycles, cost_bound and
/// order.
VerifyResult verify_tour(const Graph& g, const ClaimedTour& claimed);

}  // namespace regtsp
