#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "immunet/errors.hpp"

namespace immunet {

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = static_cast<NodeIndex>(-1);

class GraphBuilder;

/// Undirected simple graph. Nodes carry dense indices in [0, node_count)
/// plus a bijective mapping to external string ids. Immutable once built;
/// adjacency lists are strictly increasing.
class Graph {
 public:
  Graph() = default;

  NodeIndex node_count() const { return static_cast<NodeIndex>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    check_index(v);
    return adjacency_[v];
  }

  std::uint32_t degree(NodeIndex v) const {
    check_index(v);
    return static_cast<std::uint32_t>(adjacency_[v].size());
  }

  bool has_edge(NodeIndex a, NodeIndex b) const {
    check_index(a);
    check_index(b);
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  const std::string& external_id(NodeIndex v) const {
    check_index(v);
    return ids_[v];
  }

  std::optional<NodeIndex> index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::uint64_t dropped_self_loops() const { return dropped_self_loops_; }
  std::uint64_t collapsed_duplicates() const { return collapsed_duplicates_; }

  /// Builds a graph over nodes 0..n-1 (external ids are the decimal indices).
  /// Self-loops and duplicate edges follow the usual drop/collapse policy.
  static Graph from_index_edges(NodeIndex n,
                                std::span<const std::pair<NodeIndex, NodeIndex>> edges);

 private:
  friend class GraphBuilder;

  void check_index(NodeIndex v) const {
    if (v >= adjacency_.size())
      throw ContractError("node index " + std::to_string(v) + " out of range (node_count=" +
                          std::to_string(adjacency_.size()) + ")");
  }

  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::size_t edge_count_ = 0;
  std::uint64_t dropped_self_loops_ = 0;
  std::uint64_t collapsed_duplicates_ = 0;
};

/// Accumulates nodes and edges, then freezes them into a Graph.
/// Indices are assigned by first appearance; duplicate undirected edges
/// collapse (counted) and self-loops are dropped (counted).
class GraphBuilder {
 public:
  NodeIndex intern(std::string_view id) {
    auto it = index_.find(std::string(id));
    if (it != index_.end()) return it->second;
    NodeIndex idx = static_cast<NodeIndex>(ids_.size());
    ids_.emplace_back(id);
    index_.emplace(ids_.back(), idx);
    return idx;
  }

  void add_edge(std::string_view a, std::string_view b) {
    add_edge_indexed(intern(a), intern(b));
  }

  void add_edge_indexed(NodeIndex a, NodeIndex b) {
    if (a >= ids_.size() || b >= ids_.size())
      throw ContractError("edge endpoint not interned");
    if (a == b) {
      ++dropped_self_loops_;
      return;
    }
    if (a > b) std::swap(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (!seen_.insert(key).second) {
      ++collapsed_duplicates_;
      return;
    }
    edges_.emplace_back(a, b);
  }

  bool empty() const { return ids_.empty(); }

  Graph build() {
    Graph g;
    g.ids_ = std::move(ids_);
    g.index_ = std::move(index_);
    g.adjacency_.resize(g.ids_.size());
    for (auto [a, b] : edges_) {
      g.adjacency_[a].push_back(b);
      g.adjacency_[b].push_back(a);
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    g.edge_count_ = edges_.size();
    g.dropped_self_loops_ = dropped_self_loops_;
    g.collapsed_duplicates_ = collapsed_duplicates_;
    return g;
  }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
  std::unordered_set<std::uint64_t> seen_;
  std::uint64_t dropped_self_loops_ = 0;
  std::uint64_t collapsed_duplicates_ = 0;
};

inline Graph Graph::from_index_edges(NodeIndex n,
                                     std::span<const std::pair<NodeIndex, NodeIndex>> edges) {
  GraphBuilder builder;
  for (NodeIndex v = 0; v < n; ++v) builder.intern(std::to_string(v));
  for (auto [a, b] : edges) {
    if (a >= n || b >= n)
      throw ContractError("from_index_edges: endpoint out of range");
    builder.add_edge_indexed(a, b);
  }
  return builder.build();
}

struct EdgeListOptions {
  std::optional<char> delimiter;     // nullopt: any run of whitespace
  std::string comment_prefix = "#";  // lines starting with this are skipped
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line,
                                                  std::optional<char> delim) {
  std::vector<std::string_view> fields;
  if (!delim) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) fields.push_back(line.substr(start, i - start));
    }
  } else {
    std::size_t start = 0;
    while (true) {
      std::size_t pos = line.find(*delim, start);
      fields.push_back(line.substr(start, pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    if (fields.size() == 1 && fields[0].empty()) fields.clear();
  }
  return fields;
}

inline std::string_view trim_left(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

}  // namespace detail

/// Reads one edge per line: two id tokens, optionally a third (ignored
/// weight/type). Comment and blank lines are skipped. Node indices are
/// assigned in first-appearance order.
inline Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {}) {
  GraphBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view body = detail::trim_left(line);
    if (body.empty()) continue;
    if (!options.comment_prefix.empty() && body.starts_with(options.comment_prefix)) continue;
    auto fields = detail::split_fields(line, options.delimiter);
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError(line_no, "expected 2-3 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty())
      throw ParseError(line_no, "empty id field");
    builder.add_edge(fields[0], fields[1]);
  }
  if (builder.empty()) throw ParseError("empty graph");
  return builder.build();
}

/// Inverse of load_edge_list: one line per edge, endpoints as external ids.
inline void write_edge_list(const Graph& g, std::ostream& out, char delim = ' ') {
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    for (NodeIndex w : g.neighbors(v))
      if (v < w) out << g.external_id(v) << delim << g.external_id(w) << '\n';
}

/// Induced subgraph on all nodes within `radius` hops of `nodes`.
/// radius=1 keeps the given nodes plus their direct neighbors. External ids
/// are preserved; new indices follow ascending original index order.
inline Graph influence_subgraph(const Graph& g, std::span<const NodeIndex> nodes,
                                std::uint32_t radius) {
  const NodeIndex n = g.node_count();
  std::vector<std::uint32_t> dist(n, static_cast<std::uint32_t>(-1));
  std::deque<NodeIndex> queue;
  for (NodeIndex v : nodes) {
    if (v >= n) throw ContractError("influence_subgraph: node out of range");
    if (dist[v] != 0) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    NodeIndex v = queue.front();
    queue.pop_front();
    if (dist[v] == radius) continue;
    for (NodeIndex w : g.neighbors(v)) {
      if (dist[w] == static_cast<std::uint32_t>(-1)) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }

  std::vector<NodeIndex> kept;
  for (NodeIndex v = 0; v < n; ++v)
    if (dist[v] != static_cast<std::uint32_t>(-1)) kept.push_back(v);

  GraphBuilder builder;
  std::vector<NodeIndex> remap(n, kNoNode);
  for (NodeIndex v : kept) remap[v] = builder.intern(g.external_id(v));
  for (NodeIndex v : kept)
    for (NodeIndex w : g.neighbors(v))
      if (v < w && remap[w] != kNoNode) builder.add_edge_indexed(remap[v], remap[w]);
  return builder.build();
}

namespace detail {

inline void append_dot_quoted(std::string& out, std::string_view id) {
  out += '"';
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

}  // namespace detail

/// DOT rendering of the whole graph; highlighted nodes are filled.
inline std::string export_dot(const Graph& g, std::span<const NodeIndex> highlights = {}) {
  std::vector<char> mark(g.node_count(), 0);
  for (NodeIndex v : highlights) {
    if (v >= g.node_count()) throw ContractError("export_dot: highlight out of range");
    mark[v] = 1;
  }
  std::string out = "graph {\n";
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out += "  ";
    detail::append_dot_quoted(out, g.external_id(v));
    if (mark[v]) out += " [style=filled, fillcolor=\"#ff6961\"]";
    out += ";\n";
  }
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    for (NodeIndex w : g.neighbors(v)) {
      if (v >= w) continue;
      out += "  ";
      detail::append_dot_quoted(out, g.external_id(v));
      out += " -- ";
      detail::append_dot_quoted(out, g.external_id(w));
      out += ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace immunet
