#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "immunet/errors.hpp"
#include "immunet/graph.hpp"

namespace immunet {

enum class GraphModel {
  kPreferentialAttachment,
  kRandomUniform,
  kCaterpillarLocalSpread,
};

inline std::string_view to_string(GraphModel m) {
  switch (m) {
    case GraphModel::kPreferentialAttachment: return "preferential-attachment";
    case GraphModel::kRandomUniform: return "random-uniform";
    case GraphModel::kCaterpillarLocalSpread: return "caterpillar-local-spread";
  }
  return "?";
}

inline std::optional<GraphModel> graph_model_from_string(std::string_view s) {
  if (s == "preferential-attachment" || s == "pa") return GraphModel::kPreferentialAttachment;
  if (s == "random-uniform" || s == "uniform") return GraphModel::kRandomUniform;
  if (s == "caterpillar-local-spread" || s == "caterpillar")
    return GraphModel::kCaterpillarLocalSpread;
  return std::nullopt;
}

namespace detail {

// SplitMix64 stream; self-contained so generated graphs do not depend on
// standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // unbiased integer in [0, n)
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

using EdgeVec = std::vector<std::pair<NodeIndex, NodeIndex>>;

// Triangle core (clique on min(n,3) nodes); every later node attaches
// `attach` edges to distinct targets drawn proportionally to degree.
// Edge count is closed-form: C(min(n,3),2) + sum_v min(attach, v).
inline EdgeVec preferential_attachment_edges(NodeIndex n, std::uint32_t attach, Rng& rng) {
  EdgeVec edges;
  std::vector<NodeIndex> endpoint_bag;
  auto put = [&](NodeIndex a, NodeIndex b) {
    edges.emplace_back(a, b);
    endpoint_bag.push_back(a);
    endpoint_bag.push_back(b);
  };
  const NodeIndex core = std::min<NodeIndex>(n, 3);
  for (NodeIndex a = 0; a < core; ++a)
    for (NodeIndex b = a + 1; b < core; ++b) put(a, b);

  std::vector<NodeIndex> chosen;
  for (NodeIndex v = core; v < n; ++v) {
    const std::uint32_t m = std::min<std::uint32_t>(attach, v);
    chosen.clear();
    while (chosen.size() < m) {
      NodeIndex cand = endpoint_bag[rng.bounded(endpoint_bag.size())];
      if (cand == v) continue;
      if (std::find(chosen.begin(), chosen.end(), cand) != chosen.end()) continue;
      chosen.push_back(cand);
    }
    for (NodeIndex t : chosen) put(v, t);
  }
  return edges;
}

inline EdgeVec random_uniform_edges(NodeIndex n, double p, Rng& rng) {
  EdgeVec edges;
  if (p <= 0.0) return edges;
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = a + 1; b < n; ++b)
      if (p >= 1.0 || rng.unit() < p) edges.emplace_back(a, b);
  return edges;
}

// Node 0 is the designated cascade seed. Chains of roughly `len` nodes hang
// off it (their first node is the hub), and a clique sits at the end of the
// first chain. Blocking a hub saves its whole chain, so seed-aware selection
// beats pure centrality here: degree and spectral scores concentrate on the
// clique, whose members are each worth a single saved node.
inline EdgeVec caterpillar_edges(NodeIndex n, double len, Rng& rng) {
  EdgeVec edges;
  NodeIndex clique = n / 4;
  if (clique < 4) clique = n >= 6 ? 4 : 0;
  if (clique > n - 2) clique = n - 2;

  const NodeIndex chain_nodes = n - 1 - clique;
  const std::uint64_t lo = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(len / 2));
  const std::uint64_t hi =
      std::max<std::uint64_t>(lo, static_cast<std::uint64_t>(std::ceil(1.5 * len)));

  NodeIndex next = 1;
  NodeIndex first_chain_end = 0;  // falls back to the seed if no chain fits
  while (next <= chain_nodes) {
    std::uint64_t want = lo + rng.bounded(hi - lo + 1);
    NodeIndex length = static_cast<NodeIndex>(
        std::min<std::uint64_t>(want, chain_nodes - next + 1));
    edges.emplace_back(0, next);  // hub adjacent to the seed
    for (NodeIndex i = 0; i + 1 < length; ++i) edges.emplace_back(next + i, next + i + 1);
    if (first_chain_end == 0) first_chain_end = next + length - 1;
    next += length;
  }

  if (clique > 0) {
    const NodeIndex base = chain_nodes + 1;
    for (NodeIndex a = 0; a < clique; ++a)
      for (NodeIndex b = a + 1; b < clique; ++b)
        edges.emplace_back(base + a, base + b);
    edges.emplace_back(first_chain_end, base);
  }
  return edges;
}

}  // namespace detail

/// Deterministic synthetic graphs for benchmarks and acceptance runs.
/// param means: attachment count (preferential-attachment, integer >= 1),
/// edge probability (random-uniform, in [0,1]), or mean chain length
/// (caterpillar-local-spread, >= 1).
inline Graph generate_graph(GraphModel model, NodeIndex n, double param, std::uint64_t seed) {
  if (n < 2) throw ContractError("generate_graph: n must be >= 2");
  detail::Rng rng(seed);
  detail::EdgeVec edges;
  switch (model) {
    case GraphModel::kPreferentialAttachment: {
      if (param < 1.0 || param != std::floor(param))
        throw ContractError("preferential-attachment: param must be a positive integer");
      edges = detail::preferential_attachment_edges(n, static_cast<std::uint32_t>(param), rng);
      break;
    }
    case GraphModel::kRandomUniform: {
      if (param < 0.0 || param > 1.0)
        throw ContractError("random-uniform: param must be a probability in [0,1]");
      edges = detail::random_uniform_edges(n, param, rng);
      break;
    }
    case GraphModel::kCaterpillarLocalSpread: {
      if (param < 1.0)
        throw ContractError("caterpillar-local-spread: param must be >= 1");
      edges = detail::caterpillar_edges(n, param, rng);
      break;
    }
  }
  return Graph::from_index_edges(n, edges);
}

}  // namespace immunet
