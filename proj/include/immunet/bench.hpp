#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "immunet/cascade.hpp"
#include "immunet/dava.hpp"
#include "immunet/errors.hpp"
#include "immunet/graph.hpp"
#include "immunet/immunize.hpp"
#include "immunet/seeds.hpp"
#include "immunet/spectral.hpp"

namespace immunet {

struct GraphMeta {
  std::uint32_t nodes = 0;
  std::uint64_t edges = 0;
  std::string generator = "file";
  std::uint64_t seed = 0;
  double load_seconds = 0.0;   // graph load/generation, measured by the caller
  double eigen_seconds = 0.0;  // one-off principal-eigenpair timing (informational)

  bool operator==(const GraphMeta&) const = default;
};

struct BenchRow {
  Algorithm algorithm{};
  std::uint32_t k = 0;
  double elapsed_seconds = 0.0;        // selection only; median over repetitions
  std::optional<double> saved_nodes;   // absent when the cell errored
  std::string error;                   // empty on success

  bool operator==(const BenchRow&) const = default;
};

struct BenchReport {
  GraphMeta graph_meta;
  std::vector<BenchRow> rows;  // one per (algorithm, k), in request order

  bool operator==(const BenchReport&) const = default;
};

struct BenchOptions {
  std::uint32_t repetitions = 3;            // timing repetitions per cell (median)
  DavaVariant dava_variant = DavaVariant::kIterative;
  PowerIterationOptions power;
};

/// Times each algorithm x budget cell (selection only, median of repetitions)
/// and evaluates its saved-node count with paired cascade runs. A failing
/// cell records its error and leaves the other rows untouched. NetShield rows
/// include the eigenpair computation; the sweep-level eigen timing reported in
/// graph_meta is informational.
inline BenchReport run_benchmark(const Graph& g, const SeedSet& seeds,
                                 std::span<const Algorithm> algorithms,
                                 std::span<const std::uint32_t> k_list,
                                 const CascadeParams& params,
                                 const BenchOptions& options = {},
                                 GraphMeta meta = {}) {
  if (k_list.empty()) throw ContractError("run_benchmark: k_list must be nonempty");
  for (std::size_t i = 1; i < k_list.size(); ++i)
    if (k_list[i] <= k_list[i - 1])
      throw ContractError("run_benchmark: k_list must be strictly increasing");
  if (options.repetitions < 1)
    throw ContractError("run_benchmark: repetitions must be >= 1");

  BenchReport report;
  meta.nodes = g.node_count();
  meta.edges = g.edge_count();
  {
    detail::StopWatch watch;
    try {
      (void)power_iteration(g, options.power);
    } catch (const std::exception&) {
      // recorded per-row by the NetShield cells
    }
    meta.eigen_seconds = watch.seconds();
  }
  report.graph_meta = meta;

  for (Algorithm algo : algorithms) {
    for (std::uint32_t k : k_list) {
      BenchRow row;
      row.algorithm = algo;
      row.k = k;
      try {
        std::vector<double> times;
        ImmunizationResult result;
        for (std::uint32_t rep = 0; rep < options.repetitions; ++rep) {
          switch (algo) {
            case Algorithm::kHighestDegree:
              result = highest_degree(g, k, seeds.members);
              break;
            case Algorithm::kNetShield:
              result = netshield(g, k, seeds.members, options.power);
              break;
            case Algorithm::kDava:
              result = dava(g, seeds, k, options.dava_variant);
              break;
          }
          times.push_back(result.elapsed_seconds);
        }
        std::sort(times.begin(), times.end());
        row.elapsed_seconds = times[times.size() / 2];
        row.saved_nodes =
            saved_nodes(g, seeds, result.selected, params, to_string(algo)).saved;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.elapsed_seconds = 0.0;
        row.saved_nodes.reset();
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace immunet
