// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Each criterion checks the library against an independent oracle (dense
// eigensolving, plain BFS, exhaustive enumeration) at a pinned tolerance.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "immunet/bench.hpp"
#include "immunet/cascade.hpp"
#include "immunet/cli.hpp"
#include "immunet/dava.hpp"
#include "immunet/dominator.hpp"
#include "immunet/generate.hpp"
#include "immunet/graph.hpp"
#include "immunet/immunize.hpp"
#include "immunet/report_io.hpp"
#include "immunet/seeds.hpp"
#include "immunet/spectral.hpp"
#include "support.hpp"

using namespace immunet;

namespace {

struct Failure {
  std::string message;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure{message};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criterion 1: spectral oracle ------------------------------------------

void spectral_oracle() {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    NodeIndex n = 4 + rng() % 47;  // n <= 50
    double extra = 0.05 + 0.25 * std::uniform_real_distribution<double>(0, 1)(rng);
    Graph g = testsupport::random_connected_graph(n, extra, rng);

    auto start = std::chrono::steady_clock::now();
    EigenPair e = power_iteration(g);
    double elapsed = seconds_since(start);

    double expected = testsupport::dense_lambda_max(g);
    double tolerance = 1e-8 * std::max(1.0, std::abs(expected));
    require(std::abs(e.lambda - expected) <= tolerance,
            "case " + std::to_string(trial) + ": lambda " + std::to_string(e.lambda) +
                " vs dense " + std::to_string(expected));
    require(elapsed < 1.0, "case " + std::to_string(trial) + " took " +
                               std::to_string(elapsed) + " s");
  }
}

// ---- criterion 2: shield-value exactness -------------------------------------

void shield_value_exactness() {
  Graph k4 = testsupport::complete_graph(4);
  EigenPair e4 = power_iteration(k4);
  std::vector<NodeIndex> one{0};
  std::vector<NodeIndex> two{0, 1};
  require(std::abs(shield_value(k4, e4, one) - 1.5) <= 1e-12, "K4 singleton != 1.5");
  require(std::abs(shield_value(k4, e4, two) - 2.5) <= 1e-12, "K4 pair != 2.5");

  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    NodeIndex n = 4 + rng() % 22;
    Graph g = testsupport::random_graph(n, 0.3, rng);
    EigenPair e = power_iteration(g);
    std::vector<NodeIndex> set;
    for (NodeIndex v = 0; v < n; ++v)
      if (rng() % 3 == 0) set.push_back(v);
    double actual = shield_value(g, e, set);
    double expected = testsupport::shield_value_oracle(g, e, set);
    require(std::abs(actual - expected) <= 1e-12,
            "case " + std::to_string(trial) + ": |" + std::to_string(actual) + " - " +
                std::to_string(expected) + "| > 1e-12");
  }
}

// ---- criterion 3: netshield quality floor -------------------------------------

void enumerate_subsets(NodeIndex n, std::uint32_t k, std::vector<NodeIndex>& scratch,
                       NodeIndex next, const std::function<void(const std::vector<NodeIndex>&)>& fn) {
  if (scratch.size() == k) {
    fn(scratch);
    return;
  }
  for (NodeIndex v = next; v < n; ++v) {
    scratch.push_back(v);
    enumerate_subsets(n, k, scratch, v + 1, fn);
    scratch.pop_back();
  }
}

void netshield_quality_floor() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(303);
  int successes = 0;
  const int instances = 200;
  for (int trial = 0; trial < instances; ++trial) {
    NodeIndex n = 4 + rng() % 9;  // n <= 12
    double p = 0.25 + 0.25 * std::uniform_real_distribution<double>(0, 1)(rng);
    Graph g = testsupport::random_graph(n, p, rng);
    while (g.edge_count() == 0) g = testsupport::random_graph(n, p, rng);
    std::uint32_t k = 1 + rng() % std::min<std::uint32_t>(3, n - 1);

    auto greedy = netshield(g, k);
    double lambda = testsupport::dense_lambda_max(g);
    double greedy_drop = lambda - testsupport::dense_lambda_after_removal(g, greedy.selected);

    double best_drop = 0.0;
    std::vector<NodeIndex> scratch;
    enumerate_subsets(n, k, scratch, 0, [&](const std::vector<NodeIndex>& subset) {
      double drop = lambda - testsupport::dense_lambda_after_removal(g, subset);
      best_drop = std::max(best_drop, drop);
    });
    if (greedy_drop >= 0.9 * best_drop - 1e-9) ++successes;
  }
  require(successes >= instances * 9 / 10,
          "only " + std::to_string(successes) + "/200 instances met the 0.9 floor");
  double elapsed = seconds_since(start);
  require(elapsed < 300.0, "took " + std::to_string(elapsed) + " s (limit 300)");
}

// ---- criterion 4: dominator oracle ---------------------------------------------

void dominator_oracle() {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    NodeIndex n = 5 + rng() % 56;  // n <= 60
    Graph g = testsupport::random_connected_graph(n, 0.06, rng);
    std::set<NodeIndex> seed_set;
    std::size_t want = 1 + rng() % 4;
    while (seed_set.size() < want) seed_set.insert(static_cast<NodeIndex>(rng() % n));
    std::vector<NodeIndex> seed_nodes(seed_set.begin(), seed_set.end());

    DominatorTree tree = build_dominator_tree(g, make_seed_set(g, seed_nodes));
    testsupport::RemovalDominatorOracle oracle(g, seed_nodes);

    for (NodeIndex v = 0; v < n; ++v) {
      if (seed_set.count(v)) {
        require(!tree.reachable(v), "seed member appears in the tree");
        continue;
      }
      if (!oracle.reachable.count(v)) {
        require(!tree.reachable(v), "unreachable node has an idom");
        continue;
      }
      require(tree.reachable(v), "reachable node missing from the tree");
      NodeIndex expected = oracle.idom.at(v) == kNoNode ? tree.root : oracle.idom.at(v);
      require(tree.idom[v] == expected,
              "trial " + std::to_string(trial) + ": idom mismatch at node " +
                  std::to_string(v));
    }
  }
}

// ---- criterion 5: DAVA beats the baselines on local spreads ---------------------

void dava_vs_baselines() {
  std::mt19937_64 rng(505);
  int strict_vs_netshield = 0;
  const int instances = 20;
  for (int trial = 0; trial < instances; ++trial) {
    NodeIndex n = 50 + rng() % 41;
    double len = 4.0 + static_cast<double>(rng() % 3);
    Graph g = generate_graph(GraphModel::kCaterpillarLocalSpread, n, len, 9000 + trial);
    SeedSet seeds = make_seed_set(g, std::vector<NodeIndex>{0});
    CascadeParams params{.p = 1.0, .runs = 1, .master_seed = 0};

    bool strict_all_k = true;
    for (std::uint32_t k : {1u, 2u, 3u}) {
      double saved_dava = saved_nodes(g, seeds, dava(g, seeds, k).selected, params).saved;
      double saved_hd =
          saved_nodes(g, seeds, highest_degree(g, k, seeds.members).selected, params).saved;
      double saved_ns =
          saved_nodes(g, seeds, netshield(g, k, seeds.members).selected, params).saved;
      require(saved_dava >= saved_hd,
              "trial " + std::to_string(trial) + " k=" + std::to_string(k) + ": dava " +
                  std::to_string(saved_dava) + " < degree " + std::to_string(saved_hd));
      require(saved_dava >= saved_ns,
              "trial " + std::to_string(trial) + " k=" + std::to_string(k) + ": dava " +
                  std::to_string(saved_dava) + " < netshield " + std::to_string(saved_ns));
      if (!(saved_dava > saved_ns)) strict_all_k = false;
    }
    if (strict_all_k) ++strict_vs_netshield;
  }
  require(strict_vs_netshield * 2 >= instances,
          "strict win over netshield on only " + std::to_string(strict_vs_netshield) +
              "/20 instances");
}

// ---- criterion 6: cascade correctness ---------------------------------------------

void cascade_correctness() {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    NodeIndex n = 5 + rng() % 30;
    Graph g = testsupport::random_graph(n, 0.12, rng);
    std::vector<NodeIndex> seed_nodes{static_cast<NodeIndex>(rng() % n)};
    std::vector<NodeIndex> blocked;
    for (NodeIndex v = 0; v < n; ++v)
      if (v != seed_nodes[0] && rng() % 6 == 0) blocked.push_back(v);
    SeedSet seeds = make_seed_set(g, seed_nodes);

    CascadeParams ones{.p = 1.0, .runs = 2, .master_seed = rng()};
    SpreadOutcome outcome = simulate_ic(g, seeds, blocked, ones);
    auto reached = reachability(g, seeds, blocked);
    for (std::uint32_t count : outcome.per_run_counts)
      require(count == reached.size(), "p=1 run diverges from reachability");
    for (NodeIndex v = 0; v < n; ++v) {
      bool in = std::binary_search(reached.begin(), reached.end(), v);
      require(outcome.per_node_frequency[v] == (in ? 1.0 : 0.0),
              "p=1 frequency diverges from reachability");
    }

    CascadeParams zeros{.p = 0.0, .runs = 2, .master_seed = rng()};
    SpreadOutcome nothing = simulate_ic(g, seeds, blocked, zeros);
    require(nothing.mean_infected == static_cast<double>(seeds.size()),
            "p=0 infects non-seeds");
  }

  Graph edge = testsupport::path_graph(2);
  SeedSet seed0 = make_seed_set(edge, std::vector<NodeIndex>{0});
  CascadeParams half{.p = 0.5, .runs = 10000, .master_seed = 2024};
  SpreadOutcome outcome = simulate_ic(edge, seed0, {}, half);
  require(std::abs(outcome.mean_infected - 1.5) <= 0.05,
          "single-edge mean " + std::to_string(outcome.mean_infected) + " not within 1.5±0.05");

  Graph g = generate_graph(GraphModel::kPreferentialAttachment, 200, 2.0, 7);
  SeedSet seeds = make_seed_set(g, std::vector<NodeIndex>{3, 50});
  std::vector<NodeIndex> blocked{10, 20};
  CascadeParams params{.p = 0.2, .runs = 500, .master_seed = 99};
  require(simulate_ic(g, seeds, blocked, params) == simulate_ic(g, seeds, blocked, params),
          "identical master_seed is not bit-identical");
}

// ---- criterion 7: runtime-shape sweep ------------------------------------------------

void runtime_shape() {
  auto start = std::chrono::steady_clock::now();
  Graph g = generate_graph(GraphModel::kPreferentialAttachment, 5000, 2.0, 42);

  std::mt19937_64 rng(7);
  std::set<NodeIndex> seed_set;
  while (seed_set.size() < 25) seed_set.insert(static_cast<NodeIndex>(rng() % 5000));
  SeedSet seeds = make_seed_set(g, std::vector<NodeIndex>(seed_set.begin(), seed_set.end()));

  std::vector<Algorithm> algorithms{Algorithm::kHighestDegree, Algorithm::kNetShield,
                                    Algorithm::kDava};
  std::vector<std::uint32_t> k_list{10, 15, 20, 25};
  CascadeParams params{.p = 0.1, .runs = 1000, .master_seed = 1};
  BenchReport report = run_benchmark(g, seeds, algorithms, k_list, params);

  auto row_time = [&](Algorithm algo, std::uint32_t k) {
    for (const auto& row : report.rows)
      if (row.algorithm == algo && row.k == k) {
        require(row.error.empty(), "cell errored: " + row.error);
        return row.elapsed_seconds;
      }
    throw Failure{"missing row"};
  };

  std::vector<double> dava_times;
  for (std::uint32_t k : k_list) {
    double hd = row_time(Algorithm::kHighestDegree, k);
    double ns = row_time(Algorithm::kNetShield, k);
    double dv = row_time(Algorithm::kDava, k);
    require(hd < ns, "k=" + std::to_string(k) + ": degree " + std::to_string(hd) +
                         " !< netshield " + std::to_string(ns));
    require(ns < dv, "k=" + std::to_string(k) + ": netshield " + std::to_string(ns) +
                         " !< dava " + std::to_string(dv));
    dava_times.push_back(dv);
  }
  for (std::size_t i = 1; i < dava_times.size(); ++i)
    require(dava_times[i] >= dava_times[i - 1], "dava time dips between budgets");

  // least-squares fit of dava time vs k
  double mean_k = 0, mean_t = 0;
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    mean_k += k_list[i];
    mean_t += dava_times[i];
  }
  mean_k /= k_list.size();
  mean_t /= k_list.size();
  double sxx = 0, sxy = 0, sst = 0;
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    double dk = k_list[i] - mean_k, dt = dava_times[i] - mean_t;
    sxx += dk * dk;
    sxy += dk * dt;
    sst += dt * dt;
  }
  double slope = sxy / sxx;
  double ssr = 0;
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    double predicted = mean_t + slope * (k_list[i] - mean_k);
    ssr += (dava_times[i] - predicted) * (dava_times[i] - predicted);
  }
  double r2 = sst == 0.0 ? 1.0 : 1.0 - ssr / sst;
  require(r2 >= 0.9, "dava linear fit R^2 = " + std::to_string(r2));

  double elapsed = seconds_since(start);
  require(elapsed < 600.0, "sweep took " + std::to_string(elapsed) + " s (limit 600)");
}

// ---- criterion 8: CLI end to end -------------------------------------------------------

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("immunet-acceptance-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

int run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return immunet::cli::run(args, out, err);
}

json normalized(json doc) {
  if (doc.contains("results"))
    for (auto& r : doc["results"])
      if (r.contains("elapsed_seconds")) r["elapsed_seconds"] = 0.0;
  if (doc.contains("rows"))
    for (auto& r : doc["rows"]) r["elapsed_seconds"] = 0.0;
  if (doc.contains("graph_meta")) {
    doc["graph_meta"]["load_seconds"] = 0.0;
    doc["graph_meta"]["eigen_seconds"] = 0.0;
  }
  return doc;
}

void cli_end_to_end() {
  TempDir dir;
  Graph g = generate_graph(GraphModel::kCaterpillarLocalSpread, 60, 5.0, 2024);
  {
    std::ofstream out(dir.path / "graph.tsv");
    write_edge_list(g, out);
  }
  {
    std::ofstream out(dir.path / "seeds.csv");
    out << "id,score\n0,0.9\n";
  }
  const std::string graph_path = (dir.path / "graph.tsv").string();
  const std::string seeds_path = (dir.path / "seeds.csv").string();

  // immunize with all three algorithms, twice for the determinism check
  for (const char* name : {"immunize1.json", "immunize2.json"}) {
    require(run_cli({"immunize", "--graph", graph_path, "--seeds", seeds_path, "--algo",
                     "all", "--k", "3", "--out", (dir.path / name).string()}) == 0,
            "immunize failed");
  }
  Graph reloaded = [&] {
    std::ifstream in(dir.path / "graph.tsv");
    return load_edge_list(in);
  }();
  auto results =
      immunization_results_from_json(read_json_file(dir.path / "immunize1.json"), reloaded);
  require(results.size() == 3, "expected three immunization results");
  for (const auto& r : results) {
    require(r.selected.size() == 3, "selection size mismatch");
    for (NodeIndex v : r.selected)
      require(reloaded.external_id(v) != "0", "a seed node was selected");
  }
  require(normalized(read_json_file(dir.path / "immunize1.json")).dump() ==
              normalized(read_json_file(dir.path / "immunize2.json")).dump(),
          "immunize reruns differ beyond timing fields");

  // evaluate all three algorithms at p=1
  for (const char* name : {"saved1.json", "saved2.json"}) {
    require(run_cli({"evaluate", "--graph", graph_path, "--seeds", seeds_path, "--algo",
                     "all", "--k", "2", "--p", "1.0", "--runs", "4", "--master-seed", "11",
                     "--out", (dir.path / name).string()}) == 0,
            "evaluate failed");
  }
  auto saved = saved_reports_from_json(read_json_file(dir.path / "saved1.json"));
  require(saved.size() == 3, "expected three saved reports");
  for (const auto& r : saved)
    require(r.saved >= 0.0 && r.baseline_mean >= r.blocked_mean, "saved report inconsistent");
  require(read_json_file(dir.path / "saved1.json").dump() ==
              read_json_file(dir.path / "saved2.json").dump(),
          "evaluate reruns differ");

  // bench from the same files
  for (const char* name : {"bench1.json", "bench2.json"}) {
    require(run_cli({"bench", "--graph", graph_path, "--seeds", seeds_path, "--k-list",
                     "1,2", "--runs", "10", "--reps", "1", "--master-seed", "3", "--out",
                     (dir.path / name).string()}) == 0,
            "bench failed");
  }
  BenchReport bench = bench_report_from_json(read_json_file(dir.path / "bench1.json"));
  require(bench.rows.size() == 6, "expected 6 bench rows");
  for (const auto& row : bench.rows) require(row.error.empty(), "bench row errored");
  require(std::filesystem::exists(dir.path / "bench1.csv"), "bench CSV missing");
  require(normalized(read_json_file(dir.path / "bench1.json")).dump() ==
              normalized(read_json_file(dir.path / "bench2.json")).dump(),
          "bench reruns differ beyond timing fields");

  // DOT export of the top-10 influence subgraph (radius 1)
  require(run_cli({"subgraph", "--graph", graph_path, "--seeds", seeds_path, "--algo",
                   "netshield", "--k", "10", "--radius", "1", "--out",
                   (dir.path / "view.dot").string()}) == 0,
          "subgraph failed");

  // oracle: recompute the selection, expand one hop by plain BFS, induce edges
  auto top10 = netshield(reloaded, 10, make_seed_set(reloaded, std::vector<NodeIndex>{
                                           *reloaded.index_of("0")}).members)
                   .selected;
  auto kept = testsupport::bfs_within(reloaded, top10, 1);
  std::set<std::pair<std::string, std::string>> expected_edges;
  for (NodeIndex v : kept)
    for (NodeIndex w : reloaded.neighbors(v))
      if (v < w && kept.count(w)) {
        std::string a = reloaded.external_id(v), b = reloaded.external_id(w);
        if (b < a) std::swap(a, b);
        expected_edges.insert({a, b});
      }

  std::set<std::pair<std::string, std::string>> dot_edges;
  std::ifstream dot(dir.path / "view.dot");
  std::string line;
  while (std::getline(dot, line)) {
    if (line.find(" -- ") == std::string::npos) continue;
    std::vector<std::string> quoted;
    std::size_t pos = 0;
    while ((pos = line.find('"', pos)) != std::string::npos) {
      std::size_t end = line.find('"', pos + 1);
      quoted.push_back(line.substr(pos + 1, end - pos - 1));
      pos = end + 1;
    }
    require(quoted.size() == 2, "unparsable DOT edge line: " + line);
    if (quoted[1] < quoted[0]) std::swap(quoted[0], quoted[1]);
    dot_edges.insert({quoted[0], quoted[1]});
  }
  require(dot_edges == expected_edges, "DOT edges differ from the radius-1 induced set");
}

struct Criterion {
  int id;
  std::string name;
  std::function<void()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria{
      {1, "spectral oracle (power iteration vs dense eigensolver)", spectral_oracle},
      {2, "shield-value exactness (1000 cases + K4 worked values)", shield_value_exactness},
      {3, "netshield quality floor (greedy vs brute-force eigen-drop)",
       netshield_quality_floor},
      {4, "dominator oracle (idom vs removal-based reachability)", dominator_oracle},
      {5, "dava vs baselines on local-spread graphs (p=1)", dava_vs_baselines},
      {6, "cascade correctness (p=1/p=0/mean/determinism)", cascade_correctness},
      {7, "runtime shape (degree < netshield < dava, linear dava growth)", runtime_shape},
      {8, "cli end-to-end (reports, DOT, deterministic reruns)", cli_end_to_end},
  };

  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!wanted.empty() && !wanted.count(criterion.id)) continue;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.fn();
      std::cout << "[PASS] criterion " << criterion.id << ": " << criterion.name << " ("
                << seconds_since(start) << " s)\n";
    } catch (const Failure& f) {
      ++failures;
      std::cout << "[FAIL] criterion " << criterion.id << ": " << criterion.name << ": "
                << f.message << '\n';
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "[FAIL] criterion " << criterion.id << ": " << criterion.name
                << ": unexpected error: " << e.what() << '\n';
    }
  }
  return failures == 0 ? 0 : 1;
}
