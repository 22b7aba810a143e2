#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tmpp {

using NodeId = std::uint32_t;

/// One timestamped directed interaction. `seq` is the edge's rank in the
/// (time, input order) sort, so equal timestamps stay totally ordered.
struct TemporalEdge {
  NodeId source = 0;
  NodeId target = 0;
  double time = 0.0;
  std::uint64_t seq = 0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Immutable directed continuous-time network.
///
/// Nodes are dense indices into a name table. Edges are kept sorted by
/// (time, seq). Construction sorts stably and renumbers `seq` to the sorted
/// rank, so two graphs built from the same interactions in the same input
/// order compare equal.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  /// Throws ValidationError on self-loops, unknown endpoints, duplicate
  /// names or non-finite timestamps.
  TemporalGraph(std::vector<std::string> names, std::vector<TemporalEdge> edges);

  [[nodiscard]] std::size_t node_count() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::span<const TemporalEdge> edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] const std::string& name(NodeId id) const { return names_.at(id); }
  [[nodiscard]] std::optional<NodeId> find(std::string_view name) const;

  friend bool operator==(const TemporalGraph&, const TemporalGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<TemporalEdge> edges_;
};

/// Time-aggregated digraph: one arc per distinct (source, target) pair.
class StaticDigraph {
 public:
  using Arc = std::pair<NodeId, NodeId>;

  StaticDigraph() = default;
  /// Arcs are deduplicated and sorted. Self-loops and out-of-range endpoints
  /// throw ValidationError.
  StaticDigraph(std::size_t node_count, std::vector<Arc> arcs);

  [[nodiscard]] std::size_t node_count() const noexcept { return node_count_; }
  [[nodiscard]] std::span<const Arc> arcs() const noexcept { return arcs_; }

 private:
  std::size_t node_count_ = 0;
  std::vector<Arc> arcs_;
};

struct EdgeListFormat {
  char delimiter = ',';
};

/// Reads a delimited edge list with header `source<d>target<d>timestamp`.
/// Node ids are assigned in lexicographic order of their names. Errors carry
/// the 1-based line number.
TemporalGraph parse_edge_list(std::istream& in, EdgeListFormat format = {});
TemporalGraph read_edge_list_file(const std::string& path, EdgeListFormat format = {});

/// Writes the canonical edge list (sorted order, round-trip precision).
void write_edge_list(std::ostream& out, const TemporalGraph& g, EdgeListFormat format = {});

StaticDigraph aggregate_static(const TemporalGraph& g);

/// Node set of the largest strongly connected component, ascending. Among
/// equally large components the one holding the smallest node id wins.
std::vector<NodeId> largest_scc(const StaticDigraph& s);

/// Keeps edges with both endpoints in `keep`. Surviving nodes are compacted
/// to dense ids in their original relative order; edge order is preserved.
TemporalGraph filter_nodes(const TemporalGraph& g, std::span<const NodeId> keep);

}  // namespace tmpp
