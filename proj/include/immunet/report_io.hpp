#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "immunet/bench.hpp"
#include "immunet/cascade.hpp"
#include "immunet/errors.hpp"
#include "immunet/graph.hpp"
#include "immunet/immunize.hpp"

namespace immunet {

using json = nlohmann::json;

namespace detail {

inline NodeIndex require_node(const Graph& g, const std::string& id) {
  auto idx = g.index_of(id);
  if (!idx) throw ParseError("unknown ids: " + id);
  return *idx;
}

inline Algorithm require_algorithm(const std::string& name) {
  auto algo = algorithm_from_string(name);
  if (!algo) throw ParseError("unknown algorithm '" + name + "'");
  return *algo;
}

inline void require_type(const json& j, std::string_view tag) {
  if (!j.is_object() || !j.contains("type") || j["type"] != tag)
    throw ParseError("expected a '" + std::string(tag) + "' document");
}

}  // namespace detail

// ---- immunization results ----------------------------------------------

inline json to_json(std::span<const ImmunizationResult> results, const Graph& g) {
  json docs = json::array();
  for (const auto& r : results) {
    json selected = json::array();
    for (NodeIndex v : r.selected) selected.push_back(g.external_id(v));
    json scores = json::object();
    for (auto [v, score] : r.node_scores) scores[g.external_id(v)] = score;
    docs.push_back({{"algorithm", to_string(r.algorithm)},
                    {"k", r.k},
                    {"selected", selected},
                    {"node_scores", scores},
                    {"elapsed_seconds", r.elapsed_seconds}});
  }
  return json{{"type", "immunization_results"}, {"results", docs}};
}

inline std::vector<ImmunizationResult> immunization_results_from_json(const json& j,
                                                                      const Graph& g) {
  detail::require_type(j, "immunization_results");
  std::vector<ImmunizationResult> out;
  for (const auto& doc : j.at("results")) {
    ImmunizationResult r;
    r.algorithm = detail::require_algorithm(doc.at("algorithm").get<std::string>());
    r.k = doc.at("k").get<std::uint32_t>();
    for (const auto& id : doc.at("selected"))
      r.selected.push_back(detail::require_node(g, id.get<std::string>()));
    for (auto it = doc.at("node_scores").begin(); it != doc.at("node_scores").end(); ++it)
      r.node_scores[detail::require_node(g, it.key())] = it.value().get<double>();
    r.elapsed_seconds = doc.at("elapsed_seconds").get<double>();
    out.push_back(std::move(r));
  }
  return out;
}

// ---- saved-node reports --------------------------------------------------

inline json to_json(std::span<const SavedReport> reports) {
  json docs = json::array();
  for (const auto& r : reports)
    docs.push_back({{"algorithm", r.algorithm},
                    {"k", r.k},
                    {"baseline_mean", r.baseline_mean},
                    {"blocked_mean", r.blocked_mean},
                    {"saved", r.saved}});
  return json{{"type", "saved_reports"}, {"results", docs}};
}

inline std::vector<SavedReport> saved_reports_from_json(const json& j) {
  detail::require_type(j, "saved_reports");
  std::vector<SavedReport> out;
  for (const auto& doc : j.at("results")) {
    SavedReport r;
    r.algorithm = doc.at("algorithm").get<std::string>();
    r.k = doc.at("k").get<std::uint32_t>();
    r.baseline_mean = doc.at("baseline_mean").get<double>();
    r.blocked_mean = doc.at("blocked_mean").get<double>();
    r.saved = doc.at("saved").get<double>();
    out.push_back(std::move(r));
  }
  return out;
}

// ---- bench reports --------------------------------------------------------

inline json to_json(const BenchReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r{{"algorithm", to_string(row.algorithm)},
           {"k", row.k},
           {"elapsed_seconds", row.elapsed_seconds}};
    if (row.saved_nodes) r["saved_nodes"] = *row.saved_nodes;
    if (!row.error.empty()) r["error"] = row.error;
    rows.push_back(std::move(r));
  }
  const GraphMeta& m = report.graph_meta;
  return json{{"type", "bench_report"},
              {"graph_meta",
               {{"nodes", m.nodes},
                {"edges", m.edges},
                {"generator", m.generator},
                {"seed", m.seed},
                {"load_seconds", m.load_seconds},
                {"eigen_seconds", m.eigen_seconds}}},
              {"rows", rows}};
}

inline BenchReport bench_report_from_json(const json& j) {
  detail::require_type(j, "bench_report");
  BenchReport report;
  const json& m = j.at("graph_meta");
  report.graph_meta.nodes = m.at("nodes").get<std::uint32_t>();
  report.graph_meta.edges = m.at("edges").get<std::uint64_t>();
  report.graph_meta.generator = m.at("generator").get<std::string>();
  report.graph_meta.seed = m.at("seed").get<std::uint64_t>();
  report.graph_meta.load_seconds = m.at("load_seconds").get<double>();
  report.graph_meta.eigen_seconds = m.at("eigen_seconds").get<double>();
  for (const auto& doc : j.at("rows")) {
    BenchRow row;
    row.algorithm = detail::require_algorithm(doc.at("algorithm").get<std::string>());
    row.k = doc.at("k").get<std::uint32_t>();
    row.elapsed_seconds = doc.at("elapsed_seconds").get<double>();
    if (doc.contains("saved_nodes")) row.saved_nodes = doc["saved_nodes"].get<double>();
    if (doc.contains("error")) row.error = doc["error"].get<std::string>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

/// CSV companion of the bench report: algorithm,k,elapsed_seconds,saved_nodes
/// (saved_nodes left empty for errored cells).
inline void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << "algorithm,k,elapsed_seconds,saved_nodes\n";
  for (const auto& row : report.rows) {
    out << to_string(row.algorithm) << ',' << row.k << ','
        << json(row.elapsed_seconds).dump() << ',';
    if (row.saved_nodes) out << json(*row.saved_nodes).dump();
    out << '\n';
  }
}

// ---- spread outcomes -------------------------------------------------------

inline json to_json(const SpreadOutcome& outcome, const Graph& g) {
  json freq = json::object();
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    if (outcome.per_node_frequency[v] > 0.0)
      freq[g.external_id(v)] = outcome.per_node_frequency[v];
  return json{{"type", "spread_outcome"},
              {"runs", outcome.runs},
              {"mean_infected", outcome.mean_infected},
              {"per_run_counts", outcome.per_run_counts},
              {"per_node_frequency", freq}};
}

inline SpreadOutcome spread_outcome_from_json(const json& j, const Graph& g) {
  detail::require_type(j, "spread_outcome");
  SpreadOutcome outcome;
  outcome.runs = j.at("runs").get<std::uint32_t>();
  outcome.mean_infected = j.at("mean_infected").get<double>();
  outcome.per_run_counts = j.at("per_run_counts").get<std::vector<std::uint32_t>>();
  outcome.per_node_frequency.assign(g.node_count(), 0.0);
  const json& freq = j.at("per_node_frequency");
  for (auto it = freq.begin(); it != freq.end(); ++it)
    outcome.per_node_frequency[detail::require_node(g, it.key())] = it.value().get<double>();
  return outcome;
}

// ---- files ------------------------------------------------------------------

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline void write_json_file(const json& j, const std::filesystem::path& path) {
  write_text_file(path, j.dump(2) + "\n");
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in '") + path.string() + "': " + e.what());
  }
}

}  // namespace immunet
