#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netforge/errors.hpp"

namespace netforge {

// 1-based node identifier. The id doubles as quality rank: node 1 has the
// highest quality, node N the lowest. Quality magnitudes are never stored.
using NodeId = std::uint32_t;

// Append-only directed graph on nodes 1..n with no self-loops and no
// parallel edges. Out-neighbours keep insertion order.
class DirectedGraph {
 public:
  explicit DirectedGraph(std::size_t n) {
    if (n < 2) throw ValidationError("graph needs at least 2 nodes, got " + std::to_string(n));
    out_adj_.resize(n + 1);
    in_degree_.assign(n + 1, 0);
  }

  std::size_t size() const { return out_adj_.size() - 1; }
  std::size_t edge_count() const { return edge_count_; }

  bool contains(NodeId id) const { return id >= 1 && id <= size(); }

  bool has_edge(NodeId from, NodeId to) const {
    return contains(from) && contains(to) && edges_.count(key(from, to)) != 0;
  }

  void add_edge(NodeId from, NodeId to) {
    if (!contains(from) || !contains(to)) {
      throw ValidationError("edge (" + std::to_string(from) + "," + std::to_string(to) +
                            ") out of range 1.." + std::to_string(size()));
    }
    if (from == to) throw ValidationError("self-loop on node " + std::to_string(from));
    if (!edges_.insert(key(from, to)).second) {
      throw ValidationError("duplicate edge (" + std::to_string(from) + "," + std::to_string(to) +
                            ")");
    }
    out_adj_[from].push_back(to);
    ++in_degree_[to];
    ++edge_count_;
  }

  std::span<const NodeId> out_neighbors(NodeId id) const { return out_adj_.at(id); }
  std::size_t out_degree(NodeId id) const { return out_adj_.at(id).size(); }
  std::size_t in_degree(NodeId id) const { return in_degree_.at(id); }

  // Index 0 is node 1.
  std::vector<std::size_t> in_degrees() const {
    return {in_degree_.begin() + 1, in_degree_.end()};
  }

  std::vector<std::size_t> out_degrees() const {
    std::vector<std::size_t> out(size());
    for (std::size_t i = 1; i <= size(); ++i) out[i - 1] = out_adj_[i].size();
    return out;
  }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.out_adj_ == b.out_adj_;
  }

 private:
  static std::uint64_t key(NodeId from, NodeId to) {
    return (static_cast<std::uint64_t>(from) << 32) | to;
  }

  std::vector<std::vector<NodeId>> out_adj_;
  std::vector<std::size_t> in_degree_;
  std::unordered_set<std::uint64_t> edges_;
  std::size_t edge_count_ = 0;
};

struct DegreeSnapshot {
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;
};

inline DegreeSnapshot degrees_snapshot(const DirectedGraph& g) {
  return {g.in_degrees(), g.out_degrees()};
}

// Describes the first broken structural invariant, or returns an empty
// string when the graph is consistent. The in-degree check is a full recount.
inline std::string check_invariants(const DirectedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> recount(n + 1, 0);
  std::size_t out_total = 0;
  for (NodeId i = 1; i <= n; ++i) {
    std::unordered_set<NodeId> seen;
    for (NodeId j : g.out_neighbors(i)) {
      if (j == i) return "self-loop at node " + std::to_string(i);
      if (!seen.insert(j).second) return "duplicate edge at node " + std::to_string(i);
      ++recount[j];
    }
    out_total += g.out_degree(i);
  }
  if (out_total != g.edge_count()) return "out-degree sum differs from edge count";
  std::size_t in_total = 0;
  for (NodeId j = 1; j <= n; ++j) {
    if (recount[j] != g.in_degree(j)) return "in-degree mismatch at node " + std::to_string(j);
    in_total += recount[j];
  }
  if (in_total != g.edge_count()) return "in-degree sum differs from edge count";
  return {};
}

// Edge-list text: one "source,target" per line, 1-based ids, no header.
// Lines are emitted in source order, insertion order within a source.
inline void write_edge_list(const DirectedGraph& g, std::ostream& out) {
  for (NodeId i = 1; i <= g.size(); ++i) {
    for (NodeId j : g.out_neighbors(i)) out << i << ',' << j << '\n';
  }
}

inline std::string to_edge_list(const DirectedGraph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_u64(std::string_view s, std::uint64_t& value) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Parses one non-blank "source,target" line.
inline std::pair<NodeId, NodeId> parse_edge_line(std::string_view view, std::size_t line_no) {
  const auto comma = view.find(',');
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  if (comma == std::string_view::npos || !parse_u64(view.substr(0, comma), from) ||
      !parse_u64(view.substr(comma + 1), to)) {
    throw ParseError(line_no, "expected \"source,target\", got \"" + std::string(view) + "\"");
  }
  if (from == 0 || to == 0 || from > UINT32_MAX || to > UINT32_MAX) {
    throw ParseError(line_no, "node id out of range");
  }
  return {static_cast<NodeId>(from), static_cast<NodeId>(to)};
}

}  // namespace detail

// Raw pairs without structural checks; used to infer the node count.
inline std::vector<std::pair<NodeId, NodeId>> parse_edge_pairs(std::istream& in) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = detail::trim(line);
    if (!view.empty()) pairs.push_back(detail::parse_edge_line(view, line_no));
  }
  return pairs;
}

// Parses an edge list onto n nodes. Every structural violation is reported
// with its line number.
inline DirectedGraph read_edge_list(std::istream& in, std::size_t n) {
  DirectedGraph g(n);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = detail::trim(line);
    if (view.empty()) continue;
    auto [from, to] = detail::parse_edge_line(view, line_no);
    try {
      g.add_edge(from, to);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return g;
}

inline DirectedGraph from_edge_list(const std::string& text, std::size_t n) {
  std::istringstream in(text);
  return read_edge_list(in, n);
}

}  // namespace netforge
