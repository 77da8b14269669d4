#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "immunet/errors.hpp"
#include "immunet/graph.hpp"
#include "immunet/seeds.hpp"

namespace immunet {

/// Dominator tree rooted at a virtual supernode that merges all seed nodes.
/// idom[v] == kNoNode marks nodes that are unreachable from the root or were
/// merged into it (seed members). subtree_size is inclusive; for the root it
/// equals the number of reachable nodes (root included).
struct DominatorTree {
  NodeIndex root = kNoNode;  // == node_count of the underlying graph
  std::vector<NodeIndex> idom;
  std::vector<std::uint32_t> subtree_size;

  bool reachable(NodeIndex v) const { return idom[v] != kNoNode; }
};

namespace detail {

/// Immediate dominators from the merged-seed root on the graph restricted to
/// non-blocked nodes. Iterative intersection dataflow over a BFS order;
/// undirected edges act as arc pairs. The BFS order guarantees that every
/// idom pointer moves strictly rootward, so the intersect walk terminates.
inline DominatorTree dominator_core(const Graph& g, std::span<const NodeIndex> seed_members,
                                    const std::vector<char>& blocked) {
  const NodeIndex n = g.node_count();
  const NodeIndex root = n;
  std::vector<char> is_seed(n, 0);
  for (NodeIndex v : seed_members) {
    if (v >= n) throw ContractError("dominator: seed node out of range");
    if (!blocked.empty() && blocked[v])
      throw ContractError("dominator: seed node is blocked");
    is_seed[v] = 1;
  }
  auto active = [&](NodeIndex v) { return blocked.empty() || !blocked[v]; };

  // neighbors of the virtual root: union of the seeds' non-seed neighbors
  std::vector<NodeIndex> root_neighbors;
  for (NodeIndex s : seed_members)
    for (NodeIndex w : g.neighbors(s))
      if (!is_seed[w] && active(w)) root_neighbors.push_back(w);
  std::sort(root_neighbors.begin(), root_neighbors.end());
  root_neighbors.erase(std::unique(root_neighbors.begin(), root_neighbors.end()),
                       root_neighbors.end());

  constexpr std::uint32_t kUnvisited = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> pos(n + 1, kUnvisited);
  std::vector<NodeIndex> order;
  order.reserve(n + 1);
  pos[root] = 0;
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeIndex v = order[head];
    auto visit = [&](NodeIndex w) {
      if (pos[w] == kUnvisited && active(w) && !is_seed[w]) {
        pos[w] = static_cast<std::uint32_t>(order.size());
        order.push_back(w);
      }
    };
    if (v == root) {
      for (NodeIndex w : root_neighbors) visit(w);
    } else {
      for (NodeIndex w : g.neighbors(v)) visit(w);
    }
  }

  DominatorTree tree;
  tree.root = root;
  tree.idom.assign(n + 1, kNoNode);
  tree.idom[root] = root;

  auto intersect = [&](NodeIndex a, NodeIndex b) {
    while (a != b) {
      while (pos[a] > pos[b]) a = tree.idom[a];
      while (pos[b] > pos[a]) b = tree.idom[b];
    }
    return a;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i < order.size(); ++i) {
      NodeIndex v = order[i];
      // fold intersect over defined predecessors, starting from the one
      // closest to the root so intermediate results stay above v
      NodeIndex cand = kNoNode;
      bool root_pred = false;
      for (NodeIndex w : g.neighbors(v)) {
        if (!active(w)) continue;
        NodeIndex p = is_seed[w] ? root : w;
        if (p == root) {
          root_pred = true;
          break;
        }
        if (tree.idom[p] == kNoNode) continue;
        if (cand == kNoNode || pos[p] < pos[cand]) cand = p;
      }
      NodeIndex new_idom;
      if (root_pred) {
        new_idom = root;
      } else {
        new_idom = cand;
        for (NodeIndex w : g.neighbors(v)) {
          if (!active(w) || is_seed[w]) continue;
          if (tree.idom[w] == kNoNode || w == cand) continue;
          new_idom = intersect(new_idom, w);
        }
      }
      if (new_idom != kNoNode && new_idom != tree.idom[v]) {
        tree.idom[v] = new_idom;
        changed = true;
      }
    }
  }

  tree.subtree_size.assign(n + 1, 0);
  for (NodeIndex v : order) tree.subtree_size[v] = 1;
  for (std::size_t i = order.size(); i-- > 1;) {
    NodeIndex v = order[i];
    tree.subtree_size[tree.idom[v]] += tree.subtree_size[v];
  }
  return tree;
}

}  // namespace detail

/// Merges all seeds into one virtual root and computes immediate dominators
/// plus inclusive subtree sizes for every node reachable from it.
inline DominatorTree build_dominator_tree(const Graph& g, const SeedSet& seeds) {
  if (seeds.empty()) throw ContractError("DAVA requires seed nodes");
  return detail::dominator_core(g, seeds.members, {});
}

}  // namespace immunet
