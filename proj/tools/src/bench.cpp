#include "regtsp/cli/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "regtsp/generators.hpp"
#include "regtsp/oracles.hpp"
#include "regtsp/tour_io.hpp"

namespace regtsp::cli {

Graph random_instance(Vertex n, unsigned k, std::uint64_t seed) {
  if (k == 2) return relabel_randomly(cycle_graph(n), seed);
  return gen_random_regular(n, k, seed);
}

std::string random_instance_id(Vertex n, unsigned k, std::uint64_t seed) {
  return "random_n" + std::to_string(n) + "_k" + std::to_string(k) + "_s" + std::to_string(seed);
}

RunRecord run_one(const Graph& g, const std::string& instance, const std::string& group, const std::string& algo,
                  std::uint64_t seed, bool exact_cost, std::optional<std::uint64_t> optimum) {
  RunRecord rec;
  rec.instance = instance;
  rec.group = group;
  rec.algo = algo;
  rec.seed = seed;
  rec.n = g.num_vertices();
  rec.k_input = g.regular_degree().value_or(0);
  rec.optimum = optimum;
  try {
    const Tour tour = solve(g, algo, seed, exact_cost);
    rec.k_used = tour.meta.k_used;
    rec.d = tour.meta.d;
    rec.r = tour.meta.num_cycles;
    rec.m = tour.meta.m;
    rec.cost_bound = tour.cost_bound;
    rec.exact_cost = tour.exact_cost;
    rec.timings = tour.meta.timings;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

namespace {

struct Instance {
  std::string id;
  std::string group;
  std::uint64_t seed;
  // Random instances are generated inside the worker; file instances are
  // loaded up front.
  std::optional<std::tuple<Vertex, unsigned>> random;
  const Graph* graph = nullptr;
};

std::optional<std::uint64_t> optimum_of(const Graph& g) {
  if (g.num_vertices() > kHeldKarpMaxVertices || !g.is_connected()) return std::nullopt;
  return held_karp_opt(g);
}

}  // namespace

std::vector<RunRecord> run_sweep(const SweepSpec& spec) {
  std::vector<Graph> files;
  std::vector<std::string> file_ids;
  for (const auto& path : spec.graph_files) {
    files.push_back(read_graph_file(path));
    file_ids.push_back(std::filesystem::path(path).stem().string());
  }

  std::vector<Instance> instances;
  for (Vertex n : spec.ns) {
    for (unsigned k : spec.ks) {
      const std::string group = "random_n" + std::to_string(n) + "_k" + std::to_string(k);
      for (std::uint64_t seed : spec.seeds) {
        instances.push_back({random_instance_id(n, k, seed), group, seed, std::tuple{n, k}, nullptr});
      }
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    for (std::uint64_t seed : spec.seeds) {
      instances.push_back({file_ids[i], file_ids[i], seed, std::nullopt, &files[i]});
    }
  }

  std::vector<RunRecord> records;
  std::mutex records_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      const Instance& inst = instances[i];
      std::vector<RunRecord> local;
      std::optional<Graph> generated;
      std::string gen_error;
      try {
        if (inst.random) generated = random_instance(std::get<0>(*inst.random), std::get<1>(*inst.random), inst.seed);
      } catch (const std::exception& e) {
        gen_error = e.what();
      }
      if (!gen_error.empty()) {
        for (const auto& algo : spec.algos) {
          RunRecord rec;
          rec.instance = inst.id;
          rec.group = inst.group;
          rec.algo = algo;
          rec.seed = inst.seed;
          rec.n = std::get<0>(*inst.random);
          rec.k_input = std::get<1>(*inst.random);
          rec.error = gen_error;
          local.push_back(std::move(rec));
        }
      } else {
        const Graph& g = inst.graph ? *inst.graph : *generated;
        std::optional<std::uint64_t> opt;
        if (spec.optimum) {
          try {
            opt = optimum_of(g);
          } catch (const std::exception&) {
          }
        }
        for (const auto& algo : spec.algos) {
          local.push_back(run_one(g, inst.id, inst.group, algo, inst.seed, spec.exact_cost, opt));
        }
      }
      std::lock_guard lock(records_mutex);
      for (auto& rec : local) records.push_back(std::move(rec));
    }
  };

  const unsigned jobs = std::max(1u, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.instance, a.algo, a.seed) < std::tie(b.instance, b.algo, b.seed);
  });
  return records;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
  for (const auto& rec : records) {
    const auto key = std::pair{rec.group, rec.algo};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) keys.push_back(key);
    if (!rec.error) it->second.push_back(&rec);
  }

  std::vector<SummaryRow> rows;
  for (const auto& key : keys) {
    const auto& runs = groups[key];
    if (runs.empty()) continue;
    SummaryRow row;
    row.instance = key.first;
    row.algo = key.second;
    row.n = runs.front()->n;
    row.k_input = runs.front()->k_input;
    row.k_used = runs.front()->k_used;
    row.runs = runs.size();

    auto med = [&](auto get) -> std::optional<double> {
      std::vector<double> values;
      for (const RunRecord* rec : runs) {
        if (auto v = get(*rec)) values.push_back(static_cast<double>(*v));
      }
      if (values.empty()) return std::nullopt;
      return median(std::move(values));
    };
    row.d = med([](const RunRecord& r) { return r.d; });
    row.r = med([](const RunRecord& r) { return std::optional<std::size_t>(r.r); });
    row.m = med([](const RunRecord& r) { return r.m; });
    row.cost_bound = med([](const RunRecord& r) { return std::optional<std::uint64_t>(r.cost_bound); });
    row.exact_cost = med([](const RunRecord& r) { return r.exact_cost; });
    row.optimum = med([](const RunRecord& r) { return r.optimum; });
    row.timings.decompose_ms = *med([](const RunRecord& r) { return std::optional(r.timings.decompose_ms); });
    row.timings.color_ms = *med([](const RunRecord& r) { return std::optional(r.timings.color_ms); });
    row.timings.assemble_ms = *med([](const RunRecord& r) { return std::optional(r.timings.assemble_ms); });
    row.timings.total_ms = *med([](const RunRecord& r) { return std::optional(r.timings.total_ms); });
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

// Medians of integer columns are whole or end in .5.
std::string opt_median(const std::optional<double>& v) {
  if (!v) return {};
  if (*v == std::floor(*v)) return std::to_string(static_cast<std::uint64_t>(*v));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records, const std::vector<SummaryRow>& summary) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.instance << ',' << r.algo << ',' << r.seed << ',' << r.n << ',' << r.k_input << ',';
    if (r.error) {
      out << ",,,,,," << opt(r.optimum) << ",,,,\n";
      continue;
    }
    out << r.k_used << ',' << opt(r.d) << ',' << r.r << ',' << opt(r.m) << ',' << r.cost_bound << ','
        << opt(r.exact_cost) << ',' << opt(r.optimum) << ',' << ms(r.timings.decompose_ms) << ','
        << ms(r.timings.color_ms) << ',' << ms(r.timings.assemble_ms) << ',' << ms(r.timings.total_ms) << '\n';
  }
  for (const auto& s : summary) {
    out << s.instance << ',' << s.algo << ",median," << s.n << ',' << s.k_input << ',' << s.k_used << ','
        << opt_median(s.d) << ',' << opt_median(s.r) << ',' << opt_median(s.m) << ',' << opt_median(s.cost_bound)
        << ',' << opt_median(s.exact_cost) << ',' << opt_median(s.optimum) << ',' << ms(s.timings.decompose_ms) << ','
        << ms(s.timings.color_ms) << ',' << ms(s.timings.assemble_ms) << ',' << ms(s.timings.total_ms) << '\n';
  }
}

}  // namespace regtsp::cli
