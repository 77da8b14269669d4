#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "immunet/errors.hpp"
#include "immunet/graph.hpp"
#include "immunet/spectral.hpp"

namespace immunet {

enum class Algorithm { kHighestDegree, kNetShield, kDava };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kHighestDegree: return "highest_degree";
    case Algorithm::kNetShield: return "netshield";
    case Algorithm::kDava: return "dava";
  }
  return "?";
}

inline std::optional<Algorithm> algorithm_from_string(std::string_view s) {
  if (s == "highest_degree" || s == "degree") return Algorithm::kHighestDegree;
  if (s == "netshield") return Algorithm::kNetShield;
  if (s == "dava") return Algorithm::kDava;
  return std::nullopt;
}

/// Budgeted node selection: the chosen nodes in selection order plus the
/// score each one carried at selection time.
struct ImmunizationResult {
  Algorithm algorithm{};
  std::uint32_t k = 0;
  std::vector<NodeIndex> selected;
  std::map<NodeIndex, double> node_scores;
  double elapsed_seconds = 0.0;
};

namespace detail {

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<char> node_mask(const Graph& g, std::span<const NodeIndex> nodes,
                                   const char* what) {
  std::vector<char> mask(g.node_count(), 0);
  for (NodeIndex v : nodes) {
    if (v >= g.node_count())
      throw ContractError(std::string(what) + ": node " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return mask;
}

}  // namespace detail

/// Baseline: the k highest-degree nodes outside `exclude`, ties broken by
/// lowest index. Scores are the degrees.
inline ImmunizationResult highest_degree(const Graph& g, std::uint32_t k,
                                         std::span<const NodeIndex> exclude = {}) {
  detail::StopWatch watch;
  auto excluded = detail::node_mask(g, exclude, "highest_degree");

  std::vector<NodeIndex> eligible;
  eligible.reserve(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    if (!excluded[v]) eligible.push_back(v);
  std::sort(eligible.begin(), eligible.end(), [&](NodeIndex a, NodeIndex b) {
    std::uint32_t da = g.degree(a), db = g.degree(b);
    return da != db ? da > db : a < b;
  });
  if (eligible.size() > k) eligible.resize(k);

  ImmunizationResult result;
  result.algorithm = Algorithm::kHighestDegree;
  result.k = k;
  result.selected = std::move(eligible);
  for (NodeIndex v : result.selected) result.node_scores[v] = g.degree(v);
  result.elapsed_seconds = watch.seconds();
  return result;
}

/// Shield value Sv(S) = sum_{i in S} 2*lambda*u(i)^2
///                    - sum_{i in S} sum_{j in S} A(i,j)*u(i)*u(j)
/// (ordered pairs, so each edge inside S counts twice).
inline double shield_value(const Graph& g, const EigenPair& eig,
                           std::span<const NodeIndex> s) {
  if (eig.u.size() != g.node_count())
    throw ContractError("shield_value: eigenpair does not match graph");
  auto in_set = detail::node_mask(g, s, "shield_value");

  double value = 0.0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (!in_set[v]) continue;
    value += 2.0 * eig.lambda * eig.u[v] * eig.u[v];
    for (NodeIndex w : g.neighbors(v))
      if (in_set[w]) value -= eig.u[v] * eig.u[w];
  }
  return value;
}

/// Greedy shield-value maximization given a precomputed eigenpair: each step
/// adds the eligible node with the largest marginal gain
/// 2*lambda*u(i)^2 - 2*u(i)*sum_{j in S} A(i,j)*u(j), ties by lowest index.
inline ImmunizationResult netshield(const Graph& g, const EigenPair& eig, std::uint32_t k,
                                    std::span<const NodeIndex> exclude = {}) {
  if (eig.u.size() != g.node_count())
    throw ContractError("netshield: eigenpair does not match graph");
  detail::StopWatch watch;
  auto excluded = detail::node_mask(g, exclude, "netshield");

  const NodeIndex n = g.node_count();
  std::vector<double> selected_weight(n, 0.0);  // sum of u(j) over selected neighbors j

  ImmunizationResult result;
  result.algorithm = Algorithm::kNetShield;
  result.k = k;
  for (std::uint32_t step = 0; step < k; ++step) {
    NodeIndex best = kNoNode;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (NodeIndex v = 0; v < n; ++v) {
      if (excluded[v]) continue;
      double gain =
          2.0 * eig.lambda * eig.u[v] * eig.u[v] - 2.0 * eig.u[v] * selected_weight[v];
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    if (best == kNoNode) break;  // eligible nodes exhausted
    excluded[best] = 1;
    result.selected.push_back(best);
    result.node_scores[best] = best_gain;
    for (NodeIndex w : g.neighbors(best)) selected_weight[w] += eig.u[best];
  }
  result.elapsed_seconds = watch.seconds();
  return result;
}

/// Convenience form that computes the eigenpair itself; its cost is charged
/// to this call's elapsed_seconds. Propagates ConvergenceError.
inline ImmunizationResult netshield(const Graph& g, std::uint32_t k,
                                    std::span<const NodeIndex> exclude = {},
                                    const PowerIterationOptions& opts = {}) {
  detail::StopWatch watch;
  EigenPair eig = power_iteration(g, opts);
  ImmunizationResult result = netshield(g, eig, k, exclude);
  result.elapsed_seconds = watch.seconds();
  return result;
}

}  // namespace immunet
