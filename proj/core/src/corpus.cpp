#include "regtsp/corpus.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "regtsp/generators.hpp"
#include "regtsp/oracles.hpp"
#include "regtsp/regular_decompose.hpp"

namespace regtsp {

namespace fs = std::filesystem;

std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> corpus;
  for (Vertex n = 3; n <= 12; ++n) corpus.push_back({"cycle", "c" + std::to_string(n), cycle_graph(n)});
  for (Vertex q = 4; q <= 12; ++q) corpus.push_back({"complete", "k" + std::to_string(q), complete_graph(q)});
  corpus.push_back({"hypercube", "q3", hypercube(3)});
  corpus.push_back({"petersen", "petersen", petersen()});

  const std::vector<std::vector<unsigned>> circulants = {
      {6, 1, 3}, {8, 1, 2}, {9, 1, 3}, {10, 1, 3}, {11, 1, 2, 4}, {12, 1, 5}, {12, 1, 2, 3}};
  for (const auto& p : circulants) {
    std::string name = "circ";
    for (unsigned x : p) name += (name.size() == 4 ? "" : "_") + std::to_string(x);
    corpus.push_back({"circulant", name, circulant(p[0], std::span(p).subspan(1))});
  }

  const std::vector<std::pair<Vertex, unsigned>> random = {{8, 3},  {10, 3}, {12, 3}, {8, 4},  {10, 4},
                                                           {12, 4}, {10, 5}, {12, 5}, {12, 6}};
  for (const auto& [n, k] : random) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      corpus.push_back({"random",
                        "rr" + std::to_string(n) + "_" + std::to_string(k) + "_s" + std::to_string(seed),
                        gen_random_regular(n, k, seed)});
    }
  }
  return corpus;
}

OracleReport make_oracle_report(const CorpusEntry& entry) {
  const auto start = std::chrono::steady_clock::now();
  const Graph& g = entry.graph;
  OracleReport report;
  report.instance = entry.family + "/" + entry.name;
  report.n = g.num_vertices();
  report.k = g.regular_degree().value_or(0);
  if (report.n <= kHeldKarpMaxVertices && g.is_connected()) report.optimum = held_karp_opt(g);
  if (report.n <= kCensusMaxVertices && report.k >= 1) {
    const Digraph d = bidirect(g);
    report.census = cycle_cover_census(d);
    report.reduced_k = std::bit_floor(report.k);
    if (report.reduced_k != report.k) report.reduced_census = cycle_cover_census(regular_subgraph(d, report.reduced_k));
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const OracleReport& report) {
  auto census_json = [](const std::map<std::size_t, std::size_t>& census) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [r, count] : census) j[std::to_string(r)] = count;
    return j;
  };
  nlohmann::json j;
  j["instance"] = report.instance;
  j["n"] = report.n;
  j["k"] = report.k;
  j["optimum"] = report.optimum ? nlohmann::json(*report.optimum) : nlohmann::json(nullptr);
  j["cover_census"] = census_json(report.census);
  if (!report.reduced_census.empty()) {
    j["reduced_k"] = report.reduced_k;
    j["reduced_cover_census"] = census_json(report.reduced_census);
  }
  j["elapsed_ms"] = report.elapsed_ms;
  return j;
}

void write_corpus(const std::string& dir, const std::vector<CorpusEntry>& corpus, bool with_oracles) {
  for (const auto& entry : corpus) {
    const fs::path family_dir = fs::path(dir) / entry.family;
    fs::create_directories(family_dir);
    write_graph_file(entry.graph, (family_dir / (entry.name + ".graph")).string());
    if (!with_oracles) continue;
    std::ofstream out(family_dir / (entry.name + ".oracle.json"));
    if (!out) fail(ErrorKind::kInput, "cannot write oracle report under " + family_dir.string());
    out << to_json(make_oracle_report(entry)).dump(2) << "\n";
  }
}

std::vector<CorpusEntry> read_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) fail(ErrorKind::kInput, "corpus directory '" + dir + "' not found");
  std::vector<CorpusEntry> corpus;
  for (const auto& family : fs::directory_iterator(dir)) {
    if (!family.is_directory()) continue;
    for (const auto& file : fs::directory_iterator(family.path())) {
      if (file.path().extension() != ".graph") continue;
      corpus.push_back({family.path().filename().string(), file.path().stem().string(),
                        read_graph_file(file.path().string())});
    }
  }
  std::sort(corpus.begin(), corpus.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
    return a.family != b.family ? a.family < b.family : a.name < b.name;
  });
  return corpus;
}

}  // namespace regtsp
