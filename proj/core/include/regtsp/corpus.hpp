#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "regtsp/graph.hpp"

namespace regtsp {

/// Stored as instances/<family>/<name>.graph.
struct CorpusEntry {
  std::string family;
  std::string name;
  Graph graph;
};

/// The desk-scale instance set: cycles, complete graphs, a hypercube,
/// Petersen, a few circulants and seeded random regular graphs, all with
/// n <= 12.
std::vector<CorpusEntry> standard_corpus();

inline constexpr Vertex kCensusMaxVertices = 10;

/// Exact facts about one instance, written next to its graph file as
/// <name>.oracle.json.
struct OracleReport {
  std::string instance;
  Vertex n = 0;
  unsigned k = 0;
  /// Held-Karp optimum when n <= kHeldKarpMaxVertices.
  std::optional<std::uint64_t> optimum;
  /// Cycle covers of the bidirected graph per cycle count, n <= kCensusMaxVertices.
  std::map<std::size_t, std::size_t> census;
  /// Same for the bidirected graph reduced to degree 2^floor(log2 k), when
  /// that differs from k.
  std::map<std::size_t, std::size_t> reduced_census;
  unsigned reduced_k = 0;
  double elapsed_ms = 0;
};

OracleReport make_oracle_report(const CorpusEntry& entry);
nlohmann::json to_json(const OracleReport& report);

/// Writes every graph file and, with `with_oracles`, its oracle report.
void write_corpus(const std::string& dir, const std::vector<CorpusEntry>& corpus, bool with_oracles);

/// All instances under dir, sorted by (family, name).
std::vector<CorpusEntry> read_corpus(const std::string& dir);

}  // namespace regtsp
