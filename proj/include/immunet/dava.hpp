#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "immunet/dominator.hpp"
#include "immunet/errors.hpp"
#include "immunet/graph.hpp"
#include "immunet/immunize.hpp"
#include "immunet/seeds.hpp"

namespace immunet {

enum class DavaVariant { kIterative, kFast };

inline std::string_view to_string(DavaVariant v) {
  return v == DavaVariant::kIterative ? "iterative" : "fast";
}

inline std::optional<DavaVariant> dava_variant_from_string(std::string_view s) {
  if (s == "iterative") return DavaVariant::kIterative;
  if (s == "fast") return DavaVariant::kFast;
  return std::nullopt;
}

/// Seed-aware selection on the dominator tree. The benefit of blocking a node
/// is its dominator-subtree size: exactly the nodes cut off from every seed
/// when it is removed.
///   iterative: rebuild the tree after every pick (default); stops early once
///              nothing is reachable from the seeds anymore.
///   fast:      build once, take the top-k subtree sizes among the root's
///              children.
/// Ties break toward the lowest node index; seeds are never selected.
inline ImmunizationResult dava(const Graph& g, const SeedSet& seeds, std::uint32_t k,
                               DavaVariant variant = DavaVariant::kIterative) {
  if (seeds.empty()) throw ContractError("DAVA requires seed nodes");
  detail::StopWatch watch;
  const NodeIndex n = g.node_count();

  ImmunizationResult result;
  result.algorithm = Algorithm::kDava;
  result.k = k;

  if (variant == DavaVariant::kIterative) {
    std::vector<char> blocked(n, 0);
    for (std::uint32_t step = 0; step < k; ++step) {
      DominatorTree tree = detail::dominator_core(g, seeds.members, blocked);
      NodeIndex best = kNoNode;
      std::uint32_t best_size = 0;
      for (NodeIndex v = 0; v < n; ++v) {
        if (blocked[v] || seeds.contains(v) || !tree.reachable(v)) continue;
        if (tree.subtree_size[v] > best_size) {
          best_size = tree.subtree_size[v];
          best = v;
        }
      }
      if (best == kNoNode) break;  // nothing left to protect
      blocked[best] = 1;
      result.selected.push_back(best);
      result.node_scores[best] = best_size;
    }
  } else {
    DominatorTree tree = build_dominator_tree(g, seeds);
    std::vector<NodeIndex> children;
    for (NodeIndex v = 0; v < n; ++v)
      if (tree.idom[v] == tree.root) children.push_back(v);
    std::sort(children.begin(), children.end(), [&](NodeIndex a, NodeIndex b) {
      std::uint32_t sa = tree.subtree_size[a], sb = tree.subtree_size[b];
      return sa != sb ? sa > sb : a < b;
    });
    if (children.size() > k) children.resize(k);
    result.selected = std::move(children);
    for (NodeIndex v : result.selected) result.node_scores[v] = tree.subtree_size[v];
  }

  result.elapsed_seconds = watch.seconds();
  return result;
}

}  // namespace immunet
