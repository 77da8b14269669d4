#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "immunet/bench.hpp"
#include "immunet/cascade.hpp"
#include "immunet/dava.hpp"
#include "immunet/dominator.hpp"
#include "immunet/errors.hpp"
#include "immunet/generate.hpp"
#include "immunet/graph.hpp"
#include "immunet/immunize.hpp"
#include "immunet/report_io.hpp"
#include "immunet/seeds.hpp"
#include "immunet/spectral.hpp"

namespace immunet::cli {

/// Bad flags or flag combinations; maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_command when -h/--help is requested.
struct HelpRequested {
  std::string text;
};

struct RunConfig {
  enum class Command { kImmunize, kSimulate, kEvaluate, kBench, kSubgraph };
  enum class Scope { kFull, kSubgraph };

  Command command{};
  std::string graph_path;
  std::string seeds_path;
  double threshold = 0.5;

  std::vector<Algorithm> algorithms;
  std::uint32_t k = 0;
  std::vector<std::uint32_t> k_list;

  CascadeParams cascade;  // p=0.1, runs=1000, master_seed=0
  Scope scope = Scope::kFull;
  std::uint32_t radius = 1;
  DavaVariant dava_variant = DavaVariant::kIterative;
  PowerIterationOptions power;

  std::string out_path;
  std::string csv_path;  // bench; empty derives "<out stem>.csv"

  // bench-only synthetic inputs
  std::optional<GraphModel> gen_model;
  std::uint32_t gen_n = 0;
  double gen_param = 0.0;
  std::uint64_t gen_seed = 0;
  std::uint32_t random_seeds = 0;
  std::uint32_t repetitions = 3;

  // simulate-only blocking inputs
  std::vector<std::string> blocked_ids;
  std::string blocked_file;

  // subgraph-only explicit node list
  std::vector<std::string> node_ids;
};

namespace detail_cli {

inline std::vector<Algorithm> resolve_algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> algos;
  for (const auto& name : names) {
    if (name == "all") {
      algos = {Algorithm::kHighestDegree, Algorithm::kNetShield, Algorithm::kDava};
      return algos;
    }
    auto algo = algorithm_from_string(name);
    if (!algo) throw UsageError("unknown algorithm '" + name + "'");
    if (std::find(algos.begin(), algos.end(), *algo) == algos.end()) algos.push_back(*algo);
  }
  return algos;
}

}  // namespace detail_cli

/// Parses argv (without the program name) into a validated RunConfig.
/// Throws UsageError on bad input and HelpRequested for -h/--help.
inline RunConfig parse_command(const std::vector<std::string>& args) {
  RunConfig cfg;

  CLI::App app{"Budgeted network immunization: select nodes to block and "
               "measure how many nodes that saves from a cascade."};
  app.name("immunet");
  app.require_subcommand(1);

  std::string scope = "full";
  std::string variant = "iterative";
  std::string model;
  std::vector<std::string> algo_names;

  auto add_graph = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--graph", cfg.graph_path, "Edge-list file (one edge per line)");
    if (required) opt->required();
    return opt;
  };
  auto add_seeds = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--seeds", cfg.seeds_path,
                                "Seed-label CSV (`id,score` header) from the detector");
    if (required) opt->required();
    cmd->add_option("--threshold", cfg.threshold,
                    "Keep nodes with score >= threshold (default 0.5)")
        ->check(CLI::Range(0.0, 1.0));
    return opt;
  };
  auto add_algos = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--algo", algo_names,
                                "degree | netshield | dava | all (repeatable)");
    if (required) opt->required();
    cmd->add_option("--dava-variant", variant, "iterative (default) or fast")
        ->check(CLI::IsMember({"iterative", "fast"}));
    cmd->add_option("--tol", cfg.power.tol, "Eigen solve tolerance (default 1e-10)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", cfg.power.max_iter, "Eigen iteration cap (default 10000)")
        ->check(CLI::PositiveNumber);
  };
  auto add_scope = [&](CLI::App* cmd) {
    cmd->add_option("--scope", scope,
                    "Run on the full graph or on the seeds' neighborhood (default full)")
        ->check(CLI::IsMember({"full", "subgraph"}));
    cmd->add_option("--radius", cfg.radius, "Neighborhood radius for --scope subgraph (default 1)");
  };
  auto add_cascade = [&](CLI::App* cmd) {
    cmd->add_option("--p", cfg.cascade.p, "Edge activation probability (default 0.1)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--runs", cfg.cascade.runs, "Monte-Carlo runs (default 1000)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--master-seed", cfg.cascade.master_seed, "Simulation seed (default 0)");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out_path, "Output report path")->required();
  };

  CLI::App* immunize = app.add_subcommand("immunize", "Select k nodes to block");
  add_graph(immunize);
  add_seeds(immunize, false);
  add_algos(immunize, true);
  immunize->add_option("--k", cfg.k, "Budget: number of nodes to block")
      ->required()
      ->check(CLI::Range(1u, std::numeric_limits<std::uint32_t>::max()));
  add_scope(immunize);
  immunize->add_option("--rng-seed", cfg.power.rng_seed, "Eigen restart seed (rarely needed)");
  add_out(immunize);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo cascade from the seeds");
  add_graph(simulate);
  add_seeds(simulate, true);
  simulate->add_option("--blocked", cfg.blocked_ids, "Blocked nodes as external ids")
      ->delimiter(',');
  simulate->add_option("--blocked-file", cfg.blocked_file,
                       "Immunization report whose selection to block (single result)");
  add_cascade(simulate);
  add_out(simulate);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Select, then measure saved nodes");
  add_graph(evaluate);
  add_seeds(evaluate, true);
  add_algos(evaluate, true);
  evaluate->add_option("--k", cfg.k, "Budget: number of nodes to block")
      ->required()
      ->check(CLI::Range(1u, std::numeric_limits<std::uint32_t>::max()));
  add_scope(evaluate);
  add_cascade(evaluate);
  add_out(evaluate);

  CLI::App* bench = app.add_subcommand("bench", "Runtime/saved-nodes sweep over budgets");
  add_graph(bench, false);
  add_seeds(bench, false);
  add_algos(bench, false);
  bench->add_option("--k-list", cfg.k_list, "Budgets, e.g. 10,15,20,25")
      ->required()
      ->delimiter(',');
  bench->add_option("--gen", model, "Synthetic model instead of --graph")
      ->check(CLI::IsMember({"preferential-attachment", "pa", "random-uniform", "uniform",
                             "caterpillar-local-spread", "caterpillar"}));
  bench->add_option("--gen-n", cfg.gen_n, "Synthetic node count")->check(CLI::PositiveNumber);
  bench->add_option("--gen-param", cfg.gen_param, "Synthetic model parameter");
  bench->add_option("--gen-seed", cfg.gen_seed, "Synthetic model seed");
  bench->add_option("--random-seeds", cfg.random_seeds,
                    "Draw this many random seed nodes instead of --seeds")
      ->check(CLI::PositiveNumber);
  bench->add_option("--reps", cfg.repetitions, "Timing repetitions per cell (default 3)")
      ->check(CLI::PositiveNumber);
  add_cascade(bench);
  add_out(bench);
  bench->add_option("--csv", cfg.csv_path, "CSV output path (default: <out stem>.csv)");

  CLI::App* subgraph = app.add_subcommand("subgraph", "DOT export of an influence neighborhood");
  add_graph(subgraph);
  add_seeds(subgraph, false);
  add_algos(subgraph, false);
  subgraph->add_option("--k", cfg.k, "Budget when selecting via --algo")
      ->check(CLI::Range(1u, std::numeric_limits<std::uint32_t>::max()));
  subgraph->add_option("--nodes", cfg.node_ids, "Explicit node ids to expand")->delimiter(',');
  subgraph->add_option("--radius", cfg.radius, "Hop radius (default 1)");
  add_out(subgraph);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.algorithms = detail_cli::resolve_algorithms(algo_names);
  if (scope == "subgraph") cfg.scope = RunConfig::Scope::kSubgraph;
  if (auto v = dava_variant_from_string(variant)) cfg.dava_variant = *v;
  if (!model.empty()) cfg.gen_model = graph_model_from_string(model);

  const bool wants_dava = std::find(cfg.algorithms.begin(), cfg.algorithms.end(),
                                    Algorithm::kDava) != cfg.algorithms.end();

  if (immunize->parsed()) cfg.command = RunConfig::Command::kImmunize;
  if (simulate->parsed()) cfg.command = RunConfig::Command::kSimulate;
  if (evaluate->parsed()) cfg.command = RunConfig::Command::kEvaluate;
  if (bench->parsed()) cfg.command = RunConfig::Command::kBench;
  if (subgraph->parsed()) cfg.command = RunConfig::Command::kSubgraph;

  switch (cfg.command) {
    case RunConfig::Command::kImmunize:
    case RunConfig::Command::kEvaluate:
      if (wants_dava && cfg.seeds_path.empty())
        throw UsageError("dava requires --seeds");
      if (cfg.scope == RunConfig::Scope::kSubgraph && cfg.seeds_path.empty())
        throw UsageError("--scope subgraph requires --seeds");
      break;
    case RunConfig::Command::kSimulate:
      if (!cfg.blocked_ids.empty() && !cfg.blocked_file.empty())
        throw UsageError("--blocked and --blocked-file are mutually exclusive");
      break;
    case RunConfig::Command::kBench: {
      if (cfg.gen_model.has_value() == !cfg.graph_path.empty())
        throw UsageError("bench needs exactly one of --graph or --gen");
      if (cfg.gen_model && cfg.gen_n < 2) throw UsageError("--gen requires --gen-n >= 2");
      if ((cfg.random_seeds > 0) == !cfg.seeds_path.empty())
        throw UsageError("bench needs exactly one of --seeds or --random-seeds");
      if (cfg.algorithms.empty())
        cfg.algorithms = {Algorithm::kHighestDegree, Algorithm::kNetShield, Algorithm::kDava};
      if (cfg.k_list.empty()) throw UsageError("--k-list must be nonempty");
      for (std::size_t i = 0; i < cfg.k_list.size(); ++i) {
        if (cfg.k_list[i] < 1) throw UsageError("--k-list entries must be >= 1");
        if (i > 0 && cfg.k_list[i] <= cfg.k_list[i - 1])
          throw UsageError("--k-list must be strictly increasing");
      }
      break;
    }
    case RunConfig::Command::kSubgraph: {
      const bool by_nodes = !cfg.node_ids.empty();
      const bool by_algo = !cfg.algorithms.empty();
      if (by_nodes == by_algo)
        throw UsageError("subgraph needs exactly one of --nodes or --algo");
      if (by_algo) {
        if (cfg.algorithms.size() != 1)
          throw UsageError("subgraph takes a single --algo");
        if (cfg.k == 0) throw UsageError("subgraph with --algo requires --k");
        if (cfg.algorithms[0] == Algorithm::kDava && cfg.seeds_path.empty())
          throw UsageError("dava requires --seeds");
      }
      break;
    }
  }
  return cfg;
}

namespace detail_cli {

inline Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file '" + path + "'");
  return load_edge_list(in);
}

inline SeedSet load_seeds_file(const std::string& path, const Graph& g, double threshold) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open seed file '" + path + "'");
  return load_seed_labels(in, g, threshold);
}

// Replaces (g, seeds) by the radius-limited neighborhood of the seeds.
inline void apply_subgraph_scope(Graph& g, SeedSet& seeds, std::uint32_t radius) {
  Graph scoped = influence_subgraph(g, seeds.members, radius);
  SeedSet remapped;
  remapped.threshold = seeds.threshold;
  for (NodeIndex v : seeds.members) {
    auto idx = scoped.index_of(g.external_id(v));
    remapped.members.push_back(*idx);  // seeds are BFS sources, always kept
    if (auto it = seeds.scores.find(v); it != seeds.scores.end())
      remapped.scores[*idx] = it->second;
  }
  std::sort(remapped.members.begin(), remapped.members.end());
  g = std::move(scoped);
  seeds = std::move(remapped);
}

inline ImmunizationResult select_one(const Graph& g, const SeedSet& seeds, Algorithm algo,
                                     const RunConfig& cfg) {
  switch (algo) {
    case Algorithm::kHighestDegree:
      return highest_degree(g, cfg.k, seeds.members);
    case Algorithm::kNetShield:
      return netshield(g, cfg.k, seeds.members, cfg.power);
    case Algorithm::kDava:
      return dava(g, seeds, cfg.k, cfg.dava_variant);
  }
  throw ContractError("unknown algorithm");
}

inline std::vector<NodeIndex> resolve_ids(const Graph& g, const std::vector<std::string>& ids) {
  std::vector<NodeIndex> nodes;
  std::string unknown;
  for (const auto& id : ids) {
    auto idx = g.index_of(id);
    if (idx)
      nodes.push_back(*idx);
    else
      unknown += " " + id;
  }
  if (!unknown.empty()) throw ParseError("unknown ids:" + unknown);
  return nodes;
}

inline void print_selection(std::ostream& out, const Graph& g, const ImmunizationResult& r) {
  out << to_string(r.algorithm) << " (k=" << r.k << "): selected " << r.selected.size()
      << " node(s) in " << r.elapsed_seconds << " s:";
  for (NodeIndex v : r.selected) out << ' ' << g.external_id(v);
  out << '\n';
}

inline void run_immunize(const RunConfig& cfg, std::ostream& out) {
  Graph g = load_graph_file(cfg.graph_path);
  SeedSet seeds;
  if (!cfg.seeds_path.empty()) seeds = load_seeds_file(cfg.seeds_path, g, cfg.threshold);
  if (cfg.scope == RunConfig::Scope::kSubgraph) apply_subgraph_scope(g, seeds, cfg.radius);

  std::vector<ImmunizationResult> results;
  for (Algorithm algo : cfg.algorithms) results.push_back(select_one(g, seeds, algo, cfg));
  write_json_file(to_json(results, g), cfg.out_path);
  for (const auto& r : results) print_selection(out, g, r);
  out << "wrote " << cfg.out_path << '\n';
}

inline void run_evaluate(const RunConfig& cfg, std::ostream& out) {
  Graph g = load_graph_file(cfg.graph_path);
  SeedSet seeds = load_seeds_file(cfg.seeds_path, g, cfg.threshold);
  if (cfg.scope == RunConfig::Scope::kSubgraph) apply_subgraph_scope(g, seeds, cfg.radius);

  std::vector<SavedReport> reports;
  for (Algorithm algo : cfg.algorithms) {
    ImmunizationResult r = select_one(g, seeds, algo, cfg);
    reports.push_back(saved_nodes(g, seeds, r.selected, cfg.cascade, to_string(algo)));
    out << to_string(algo) << " (k=" << cfg.k << "): saved " << reports.back().saved
        << " of " << reports.back().baseline_mean << " mean infected\n";
  }
  write_json_file(to_json(reports), cfg.out_path);
  out << "wrote " << cfg.out_path << '\n';
}

inline void run_simulate(const RunConfig& cfg, std::ostream& out) {
  Graph g = load_graph_file(cfg.graph_path);
  SeedSet seeds = load_seeds_file(cfg.seeds_path, g, cfg.threshold);

  std::vector<NodeIndex> blocked;
  if (!cfg.blocked_ids.empty()) blocked = resolve_ids(g, cfg.blocked_ids);
  if (!cfg.blocked_file.empty()) {
    auto results = immunization_results_from_json(read_json_file(cfg.blocked_file), g);
    if (results.size() != 1)
      throw ParseError("--blocked-file holds " + std::to_string(results.size()) +
                       " results; expected exactly 1");
    blocked = results[0].selected;
  }

  SpreadOutcome outcome = simulate_ic(g, seeds, blocked, cfg.cascade);
  write_json_file(to_json(outcome, g), cfg.out_path);
  out << "mean infected " << outcome.mean_infected << " over " << outcome.runs << " runs ("
      << seeds.size() << " seeds, " << blocked.size() << " blocked)\n";
  out << "wrote " << cfg.out_path << '\n';
}

inline void run_bench(const RunConfig& cfg, std::ostream& out) {
  GraphMeta meta;
  detail::StopWatch load_watch;
  Graph g;
  if (cfg.gen_model) {
    g = generate_graph(*cfg.gen_model, cfg.gen_n, cfg.gen_param, cfg.gen_seed);
    meta.generator = to_string(*cfg.gen_model);
    meta.seed = cfg.gen_seed;
  } else {
    g = load_graph_file(cfg.graph_path);
    meta.generator = "file";
  }
  meta.load_seconds = load_watch.seconds();

  SeedSet seeds;
  if (!cfg.seeds_path.empty()) {
    seeds = load_seeds_file(cfg.seeds_path, g, cfg.threshold);
  } else {
    if (cfg.random_seeds > g.node_count())
      throw ContractError("--random-seeds exceeds node count");
    detail::Rng rng(detail::splitmix64(cfg.cascade.master_seed ^ 0xbe5eedULL));
    std::vector<char> taken(g.node_count(), 0);
    std::vector<NodeIndex> drawn;
    while (drawn.size() < cfg.random_seeds) {
      NodeIndex v = static_cast<NodeIndex>(rng.bounded(g.node_count()));
      if (!taken[v]) {
        taken[v] = 1;
        drawn.push_back(v);
      }
    }
    seeds = make_seed_set(g, drawn, cfg.threshold);
  }

  BenchOptions options;
  options.repetitions = cfg.repetitions;
  options.dava_variant = cfg.dava_variant;
  options.power = cfg.power;
  BenchReport report =
      run_benchmark(g, seeds, cfg.algorithms, cfg.k_list, cfg.cascade, options, meta);

  write_json_file(to_json(report), cfg.out_path);
  std::filesystem::path csv = cfg.csv_path.empty()
                                  ? std::filesystem::path(cfg.out_path).replace_extension(".csv")
                                  : std::filesystem::path(cfg.csv_path);
  std::ostringstream csv_text;
  write_bench_csv(report, csv_text);
  write_text_file(csv, csv_text.str());

  for (const auto& row : report.rows) {
    out << to_string(row.algorithm) << " k=" << row.k;
    if (row.error.empty()) {
      out << " " << row.elapsed_seconds << " s, saved "
          << (row.saved_nodes ? *row.saved_nodes : 0.0) << '\n';
    } else {
      out << " error: " << row.error << '\n';
    }
  }
  out << "wrote " << cfg.out_path << " and " << csv.string() << '\n';
}

inline void run_subgraph(const RunConfig& cfg, std::ostream& out) {
  Graph g = load_graph_file(cfg.graph_path);
  SeedSet seeds;
  if (!cfg.seeds_path.empty()) seeds = load_seeds_file(cfg.seeds_path, g, cfg.threshold);

  std::vector<NodeIndex> nodes;
  if (!cfg.node_ids.empty()) {
    nodes = resolve_ids(g, cfg.node_ids);
  } else {
    nodes = select_one(g, seeds, cfg.algorithms[0], cfg).selected;
  }

  Graph sub = influence_subgraph(g, nodes, cfg.radius);
  std::vector<NodeIndex> highlights;
  for (NodeIndex v : nodes) highlights.push_back(*sub.index_of(g.external_id(v)));
  write_text_file(cfg.out_path, export_dot(sub, highlights));
  out << "subgraph: " << sub.node_count() << " nodes, " << sub.edge_count() << " edges\n";
  out << "wrote " << cfg.out_path << '\n';
}

}  // namespace detail_cli

/// Full CLI entry point: parse, dispatch, and map errors to exit codes.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_command(args);
  } catch (const HelpRequested& help) {
    out << help.text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    switch (cfg.command) {
      case RunConfig::Command::kImmunize: detail_cli::run_immunize(cfg, out); break;
      case RunConfig::Command::kSimulate: detail_cli::run_simulate(cfg, out); break;
      case RunConfig::Command::kEvaluate: detail_cli::run_evaluate(cfg, out); break;
      case RunConfig::Command::kBench: detail_cli::run_bench(cfg, out); break;
      case RunConfig::Command::kSubgraph: detail_cli::run_subgraph(cfg, out); break;
    }
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitDataFormat;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  }
  return kExitOk;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace immunet::cli
