#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "immunet/errors.hpp"
#include "immunet/graph.hpp"
#include "immunet/seeds.hpp"

namespace immunet {

struct CascadeParams {
  double p = 0.1;              // per-edge activation probability
  std::uint32_t runs = 1000;   // Monte-Carlo repetitions
  std::uint64_t master_seed = 0;
};

struct SpreadOutcome {
  std::uint32_t runs = 0;
  double mean_infected = 0.0;
  std::vector<double> per_node_frequency;    // fraction of runs infected
  std::vector<std::uint32_t> per_run_counts;

  bool operator==(const SpreadOutcome&) const = default;
};

struct SavedReport {
  std::string algorithm;
  std::uint32_t k = 0;
  double baseline_mean = 0.0;
  double blocked_mean = 0.0;
  double saved = 0.0;  // baseline_mean - blocked_mean

  bool operator==(const SavedReport&) const = default;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Substream derivation: run r draws from seed splitmix64(master ^ splitmix64(r));
// the attempt along directed edge u->v uses the uniform produced by hashing
// (run_seed, u, v). Draws therefore depend only on (master_seed, r, u, v), not
// on traversal order, which is what makes common-random-number pairing exact.
constexpr std::uint64_t run_seed(std::uint64_t master, std::uint64_t run) {
  return splitmix64(master ^ splitmix64(run));
}

constexpr double edge_uniform(std::uint64_t run_seed, NodeIndex from, NodeIndex to) {
  std::uint64_t key = (static_cast<std::uint64_t>(from) << 32) | to;
  std::uint64_t z = splitmix64(run_seed ^ splitmix64(key));
  return static_cast<double>(z >> 11) * 0x1.0p-53;  // uniform in [0,1)
}

inline void check_cascade_inputs(const Graph& g, const SeedSet& seeds,
                                 std::span<const NodeIndex> blocked) {
  for (NodeIndex v : seeds.members)
    if (v >= g.node_count()) throw ContractError("cascade: seed node out of range");
  for (NodeIndex v : blocked) {
    if (v >= g.node_count()) throw ContractError("cascade: blocked node out of range");
    if (seeds.contains(v))
      throw ContractError("cascade: blocked set intersects seeds (node " +
                          std::to_string(v) + ")");
  }
}

}  // namespace detail

/// Nodes reachable from the seeds when `blocked` nodes are deleted; the exact
/// p=1 cascade outcome. Returned sorted.
inline std::vector<NodeIndex> reachability(const Graph& g, const SeedSet& seeds,
                                           std::span<const NodeIndex> blocked = {}) {
  detail::check_cascade_inputs(g, seeds, blocked);
  std::vector<char> mark(g.node_count(), 0);
  for (NodeIndex v : blocked) mark[v] = 2;
  std::vector<NodeIndex> queue;
  for (NodeIndex v : seeds.members) {
    if (mark[v] == 0) {
      mark[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (NodeIndex w : g.neighbors(queue[head]))
      if (mark[w] == 0) {
        mark[w] = 1;
        queue.push_back(w);
      }
  std::sort(queue.begin(), queue.end());
  return queue;
}

/// Monte-Carlo independent cascade. Blocked nodes are deleted up front: they
/// can neither be infected nor transmit. Each newly infected node attempts
/// once to infect each uninfected neighbor with probability p. Bit-identical
/// for identical inputs and master_seed.
inline SpreadOutcome simulate_ic(const Graph& g, const SeedSet& seeds,
                                 std::span<const NodeIndex> blocked,
                                 const CascadeParams& params) {
  if (params.p < 0.0 || params.p > 1.0)
    throw ContractError("cascade: p must be in [0,1]");
  if (params.runs < 1) throw ContractError("cascade: runs must be >= 1");
  detail::check_cascade_inputs(g, seeds, blocked);

  const NodeIndex n = g.node_count();
  std::vector<char> state(n, 0);  // 0 susceptible, 1 infected, 2 blocked
  for (NodeIndex v : blocked) state[v] = 2;

  SpreadOutcome outcome;
  outcome.runs = params.runs;
  outcome.per_node_frequency.assign(n, 0.0);
  outcome.per_run_counts.reserve(params.runs);

  std::vector<NodeIndex> frontier;
  std::uint64_t total = 0;
  for (std::uint32_t r = 0; r < params.runs; ++r) {
    const std::uint64_t rs = detail::run_seed(params.master_seed, r);
    frontier.clear();
    for (NodeIndex v : seeds.members) {
      state[v] = 1;
      frontier.push_back(v);
    }
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      NodeIndex u = frontier[head];
      for (NodeIndex w : g.neighbors(u)) {
        if (state[w] != 0) continue;
        bool success;
        if (params.p >= 1.0)
          success = true;
        else if (params.p <= 0.0)
          success = false;
        else
          success = detail::edge_uniform(rs, u, w) < params.p;
        if (success) {
          state[w] = 1;
          frontier.push_back(w);
        }
      }
    }
    outcome.per_run_counts.push_back(static_cast<std::uint32_t>(frontier.size()));
    total += frontier.size();
    for (NodeIndex v : frontier) {
      outcome.per_node_frequency[v] += 1.0;
      state[v] = 0;  // reset for the next run
    }
  }

  outcome.mean_infected = static_cast<double>(total) / params.runs;
  for (double& f : outcome.per_node_frequency) f /= params.runs;
  return outcome;
}

/// Paired evaluation: the same per-(run,edge) draws are replayed with and
/// without the blocked set, so saved >= 0 holds run by run, not just in
/// expectation.
inline SavedReport saved_nodes(const Graph& g, const SeedSet& seeds,
                               std::span<const NodeIndex> blocked,
                               const CascadeParams& params,
                               std::string_view algorithm = "") {
  SpreadOutcome baseline = simulate_ic(g, seeds, {}, params);
  SpreadOutcome with_blocking = simulate_ic(g, seeds, blocked, params);
  SavedReport report;
  report.algorithm = std::string(algorithm);
  report.k = static_cast<std::uint32_t>(blocked.size());
  report.baseline_mean = baseline.mean_infected;
  report.blocked_mean = with_blocking.mean_infected;
  report.saved = baseline.mean_infected - with_blocking.mean_infected;
  return report;
}

}  // namespace immunet
