#pragma once

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "immunet/errors.hpp"
#include "immunet/graph.hpp"

namespace immunet {

/// Nodes flagged as cascade sources by an external detector, with optional
/// confidence scores. Every retained score is >= threshold.
struct SeedSet {
  std::vector<NodeIndex> members;      // sorted, unique
  std::map<NodeIndex, double> scores;  // empty when no scores were supplied
  double threshold = 0.5;

  bool contains(NodeIndex v) const {
    return std::binary_search(members.begin(), members.end(), v);
  }
  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

inline SeedSet make_seed_set(const Graph& g, std::span<const NodeIndex> members,
                             double threshold = 0.5) {
  if (threshold < 0.0 || threshold > 1.0)
    throw ContractError("seed threshold must be in [0,1]");
  SeedSet s;
  s.threshold = threshold;
  for (NodeIndex v : members) {
    if (v >= g.node_count())
      throw ContractError("seed node " + std::to_string(v) + " out of range");
    s.members.push_back(v);
  }
  std::sort(s.members.begin(), s.members.end());
  s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
  return s;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

/// Reads a `id,score` table and keeps nodes whose score >= threshold
/// (inclusive boundary). Every id must exist in the graph; offenders are
/// collected and reported together.
inline SeedSet load_seed_labels(std::istream& in, const Graph& g, double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw ContractError("seed threshold must be in [0,1]");

  SeedSet s;
  s.threshold = threshold;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> unknown;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view body = detail::trim(line);
    if (body.empty()) continue;
    if (first_row) {
      first_row = false;
      if (body == "id,score") continue;  // header
    }
    std::size_t comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos)
      throw ParseError(line_no, "expected 2 comma-separated fields");
    std::string_view id = detail::trim(body.substr(0, comma));
    std::string_view score_text = detail::trim(body.substr(comma + 1));
    if (id.empty()) throw ParseError(line_no, "empty id field");

    double score = 0.0;
    auto [ptr, ec] = std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
    if (ec != std::errc{} || ptr != score_text.data() + score_text.size())
      throw ParseError(line_no, "malformed score '" + std::string(score_text) + "'");
    if (score < 0.0 || score > 1.0)
      throw ParseError(line_no, "score " + std::string(score_text) + " outside [0,1]");

    auto idx = g.index_of(id);
    if (!idx) {
      unknown.emplace_back(id);
      continue;
    }
    if (score >= threshold) {
      s.members.push_back(*idx);
      s.scores[*idx] = score;
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown ids:";
    for (const auto& id : unknown) msg += " " + id;
    throw ParseError(msg);
  }
  std::sort(s.members.begin(), s.members.end());
  s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
  return s;
}

}  // namespace immunet
