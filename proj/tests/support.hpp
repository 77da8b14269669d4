#pragma once

// Test-side helpers and independent oracles. Everything here recomputes
// answers from first principles (dense matrices, plain BFS, enumeration)
// so the library path under test is never on both sides of a comparison.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "immunet/graph.hpp"
#include "immunet/spectral.hpp"

namespace testsupport {

using immunet::Graph;
using immunet::NodeIndex;
using Edge = std::pair<NodeIndex, NodeIndex>;

// ---- graph construction ----------------------------------------------------

inline Graph graph_from_edges(NodeIndex n, const std::vector<Edge>& edges) {
  return Graph::from_index_edges(n, edges);
}

inline Graph path_graph(NodeIndex n) {
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return graph_from_edges(n, edges);
}

inline Graph star_graph(NodeIndex leaves) {
  std::vector<Edge> edges;
  for (NodeIndex i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return graph_from_edges(leaves + 1, edges);
}

inline Graph complete_graph(NodeIndex n) {
  std::vector<Edge> edges;
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b) edges.push_back({a, b});
  return graph_from_edges(n, edges);
}

// Random spanning tree plus extra uniform edges: always connected.
inline std::vector<Edge> random_connected_edges(NodeIndex n, double extra_p,
                                                std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (NodeIndex v = 1; v < n; ++v) {
    NodeIndex parent = static_cast<NodeIndex>(rng() % v);
    edges.push_back({parent, v});
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      if (unit(rng) < extra_p) edges.push_back({a, b});
  return edges;
}

inline Graph random_connected_graph(NodeIndex n, double extra_p, std::mt19937_64& rng) {
  return graph_from_edges(n, random_connected_edges(n, extra_p, rng));
}

inline Graph random_graph(NodeIndex n, double p, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      if (unit(rng) < p) edges.push_back({a, b});
  return graph_from_edges(n, edges);
}

// ---- edge-set views ----------------------------------------------------------

inline std::set<std::pair<std::string, std::string>> external_edge_set(const Graph& g) {
  std::set<std::pair<std::string, std::string>> edges;
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    for (NodeIndex w : g.neighbors(v))
      if (v < w) {
        std::string a = g.external_id(v), b = g.external_id(w);
        if (b < a) std::swap(a, b);
        edges.insert({a, b});
      }
  return edges;
}

inline std::set<std::pair<NodeIndex, NodeIndex>> index_edge_set(const Graph& g) {
  std::set<std::pair<NodeIndex, NodeIndex>> edges;
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    for (NodeIndex w : g.neighbors(v))
      if (v < w) edges.insert({v, w});
  return edges;
}

// ---- independent BFS oracle ---------------------------------------------------

// Hop-limited multi-source BFS over an explicit adjacency copy.
inline std::set<NodeIndex> bfs_within(const Graph& g, const std::vector<NodeIndex>& sources,
                                      std::uint32_t radius) {
  std::map<NodeIndex, std::uint32_t> dist;
  std::queue<NodeIndex> queue;
  for (NodeIndex v : sources)
    if (!dist.count(v)) {
      dist[v] = 0;
      queue.push(v);
    }
  while (!queue.empty()) {
    NodeIndex v = queue.front();
    queue.pop();
    if (dist[v] == radius) continue;
    for (NodeIndex w : g.neighbors(v))
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
  }
  std::set<NodeIndex> reached;
  for (auto [v, d] : dist) reached.insert(v);
  return reached;
}

// Plain reachability avoiding a blocked set.
inline std::set<NodeIndex> bfs_avoiding(const Graph& g, const std::vector<NodeIndex>& sources,
                                        const std::set<NodeIndex>& blocked) {
  std::set<NodeIndex> seen;
  std::queue<NodeIndex> queue;
  for (NodeIndex v : sources)
    if (!blocked.count(v) && seen.insert(v).second) queue.push(v);
  while (!queue.empty()) {
    NodeIndex v = queue.front();
    queue.pop();
    for (NodeIndex w : g.neighbors(v))
      if (!blocked.count(w) && seen.insert(w).second) queue.push(w);
  }
  return seen;
}

// ---- dense spectral oracle -----------------------------------------------------

inline Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const NodeIndex n = g.node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (NodeIndex v = 0; v < n; ++v)
    for (NodeIndex w : g.neighbors(v)) a(v, w) = 1.0;
  return a;
}

inline double dense_lambda_max(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

inline double dense_lambda_max(const Graph& g) { return dense_lambda_max(dense_adjacency(g)); }

// lambda_max of the graph after deleting `removed` (dense, independent route).
inline double dense_lambda_after_removal(const Graph& g, const std::vector<NodeIndex>& removed) {
  std::vector<char> gone(g.node_count(), 0);
  for (NodeIndex v : removed) gone[v] = 1;
  std::vector<NodeIndex> keep;
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    if (!gone[v]) keep.push_back(v);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (g.has_edge(keep[i], keep[j])) a(i, j) = 1.0;
  return dense_lambda_max(a);
}

// Direct dense evaluation of the shield-value double sum.
inline double shield_value_oracle(const Graph& g, const immunet::EigenPair& e,
                                  const std::vector<NodeIndex>& s) {
  Eigen::MatrixXd a = dense_adjacency(g);
  std::vector<NodeIndex> set = s;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  double value = 0.0;
  for (NodeIndex i : set) value += 2.0 * e.lambda * e.u[i] * e.u[i];
  for (NodeIndex i : set)
    for (NodeIndex j : set) value -= a(i, j) * e.u[i] * e.u[j];
  return value;
}

// Removal-based dominator oracle w.r.t. the merged-seed root: w dominates v
// iff deleting w leaves v unreachable from every seed. The immediate
// dominator is the proper dominator with the largest dominator set of its own
// (dominators nest along the root-to-v chain). idom uses immunet::kNoNode to
// mean "the root".
struct RemovalDominatorOracle {
  std::set<NodeIndex> reachable;  // non-seed nodes reached from the seeds
  std::map<NodeIndex, NodeIndex> idom;
  std::map<NodeIndex, std::set<NodeIndex>> dominators;  // proper, excluding root and v

  RemovalDominatorOracle(const Graph& g, const std::vector<NodeIndex>& seeds) {
    auto reach = [&](const std::set<NodeIndex>& blocked) {
      auto r = bfs_avoiding(g, seeds, blocked);
      for (NodeIndex s : seeds) r.erase(s);
      return r;
    };
    reachable = reach({});
    for (NodeIndex v : reachable) dominators[v] = {};
    for (NodeIndex w : reachable) {
      auto without = reach({w});
      for (NodeIndex v : reachable)
        if (v != w && !without.count(v)) dominators[v].insert(w);
    }
    for (NodeIndex v : reachable) {
      NodeIndex best = immunet::kNoNode;
      std::size_t best_rank = 0;
      for (NodeIndex w : dominators[v]) {
        std::size_t rank = dominators[w].size() + 1;
        if (rank > best_rank) {
          best_rank = rank;
          best = w;
        }
      }
      idom[v] = best;
    }
  }
};

}  // namespace testsupport
