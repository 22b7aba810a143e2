#include "tmpp/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "tmpp/errors.hpp"

namespace tmpp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::string line_error(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

}  // namespace

TemporalGraph::TemporalGraph(std::vector<std::string> names, std::vector<TemporalEdge> edges)
    : names_(std::move(names)), edges_(std::move(edges)) {
  {
    std::vector<std::string_view> sorted(names_.begin(), names_.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("duplicate node name");
    }
  }
  for (const auto& e : edges_) {
    if (e.source >= names_.size() || e.target >= names_.size()) {
      throw ValidationError("edge endpoint is not a node");
    }
    if (e.source == e.target) {
      throw ValidationError("self-loop on node '" + names_[e.source] + "'");
    }
    if (!std::isfinite(e.time)) throw ValidationError("non-finite timestamp");
  }
  std::stable_sort(edges_.begin(), edges_.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
    return a.time < b.time || (a.time == b.time && a.seq < b.seq);
  });
  for (std::size_t i = 0; i < edges_.size(); ++i) edges_[i].seq = i;
}

std::optional<NodeId> TemporalGraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

StaticDigraph::StaticDigraph(std::size_t node_count, std::vector<Arc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  for (const auto& [s, t] : arcs_) {
    if (s >= node_count_ || t >= node_count_) throw ValidationError("arc endpoint out of range");
    if (s == t) throw ValidationError("self-loop arc");
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
}

TemporalGraph parse_edge_list(std::istream& in, EdgeListFormat format) {
  const char d = format.delimiter;
  std::string line;
  std::size_t line_no = 0;

  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, d);
    if (fields.size() != 3 || fields[0] != "source" || fields[1] != "target" ||
        fields[2] != "timestamp") {
      throw ValidationError(line_error(line_no, "expected header 'source" + std::string(1, d) +
                                                    "target" + std::string(1, d) + "timestamp'"));
    }
    have_header = true;
    break;
  }
  if (!have_header) throw ValidationError("missing header row");

  struct Row {
    std::string source, target;
    double time;
  };
  std::vector<Row> rows;
  std::map<std::string, NodeId, std::less<>> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, d);
    if (fields.size() != 3) {
      throw ValidationError(line_error(line_no, "expected 3 fields, got " +
                                                    std::to_string(fields.size())));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ValidationError(line_error(line_no, "empty node identifier"));
    }
    double t = 0.0;
    const auto ts = fields[2];
    const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), t);
    if (ec != std::errc() || ptr != ts.data() + ts.size()) {
      throw ValidationError(line_error(line_no, "malformed timestamp '" + std::string(ts) + "'"));
    }
    if (!std::isfinite(t)) {
      throw ValidationError(line_error(line_no, "non-finite timestamp '" + std::string(ts) + "'"));
    }
    if (fields[0] == fields[1]) {
      throw ValidationError(line_error(line_no, "self-loop on node '" + std::string(fields[0]) + "'"));
    }
    rows.push_back({std::string(fields[0]), std::string(fields[1]), t});
    ids.emplace(fields[0], 0);
    ids.emplace(fields[1], 0);
  }
  if (in.bad()) throw IoError("read failure");

  std::vector<std::string> names;
  names.reserve(ids.size());
  for (auto& [name, id] : ids) {
    id = static_cast<NodeId>(names.size());
    names.push_back(name);
  }
  std::vector<TemporalEdge> edges;
  edges.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    edges.push_back({ids.find(rows[i].source)->second, ids.find(rows[i].target)->second,
                     rows[i].time, i});
  }
  return TemporalGraph(std::move(names), std::move(edges));
}

TemporalGraph read_edge_list_file(const std::string& path, EdgeListFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return parse_edge_list(in, format);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const TemporalGraph& g, EdgeListFormat format) {
  const char d = format.delimiter;
  for (const auto& n : g.names()) {
    if (n.find(d) != std::string::npos || n.find('\n') != std::string::npos) {
      throw ValidationError("node name '" + n + "' cannot be written with this delimiter");
    }
  }
  out << "source" << d << "target" << d << "timestamp\n";
  char buf[64];
  for (const auto& e : g.edges()) {
    const auto res = std::to_chars(buf, buf + sizeof buf, e.time);
    out << g.name(e.source) << d << g.name(e.target) << d << std::string_view(buf, res.ptr - buf)
        << '\n';
  }
}

StaticDigraph aggregate_static(const TemporalGraph& g) {
  std::vector<StaticDigraph::Arc> arcs;
  arcs.reserve(g.edge_count());
  for (const auto& e : g.edges()) arcs.emplace_back(e.source, e.target);
  return StaticDigraph(g.node_count(), std::move(arcs));
}

std::vector<NodeId> largest_scc(const StaticDigraph& s) {
  const std::size_t n = s.node_count();
  if (n == 0) return {};

  // CSR adjacency; arcs are sorted by source.
  std::vector<std::size_t> offset(n + 1, 0);
  for (const auto& a : s.arcs()) ++offset[a.first + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<NodeId> adj(s.arcs().size());
  for (std::size_t i = 0; i < s.arcs().size(); ++i) adj[i] = s.arcs()[i].second;

  // Iterative Tarjan.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> call;  // (node, next arc offset)
  std::size_t counter = 0, n_comp = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, offset[root]);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < offset[v + 1]) {
        const NodeId w = adj[next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, offset[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const NodeId done = v;
      call.pop_back();
      if (!call.empty()) {
        const NodeId parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = n_comp;
        } while (w != done);
        ++n_comp;
      }
    }
  }

  std::vector<std::size_t> size(n_comp, 0);
  std::vector<NodeId> min_node(n_comp, static_cast<NodeId>(n));
  for (NodeId v = 0; v < n; ++v) {
    ++size[comp[v]];
    min_node[comp[v]] = std::min(min_node[comp[v]], v);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < n_comp; ++c) {
    if (size[c] > size[best] || (size[c] == size[best] && min_node[c] < min_node[best])) best = c;
  }
  std::vector<NodeId> out;
  out.reserve(size[best]);
  for (NodeId v = 0; v < n; ++v) {
    if (comp[v] == best) out.push_back(v);
  }
  return out;
}

TemporalGraph filter_nodes(const TemporalGraph& g, std::span<const NodeId> keep) {
  std::vector<bool> in_keep(g.node_count(), false);
  for (NodeId v : keep) {
    if (v < g.node_count()) in_keep[v] = true;
  }
  std::vector<bool> used(g.node_count(), false);
  for (const auto& e : g.edges()) {
    if (in_keep[e.source] && in_keep[e.target]) used[e.source] = used[e.target] = true;
  }
  std::vector<NodeId> remap(g.node_count(), 0);
  std::vector<std::string> names;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!used[v]) continue;
    remap[v] = static_cast<NodeId>(names.size());
    names.push_back(g.name(v));
  }
  std::vector<TemporalEdge> edges;
  for (const auto& e : g.edges()) {
    if (in_keep[e.source] && in_keep[e.target]) {
      edges.push_back({remap[e.source], remap[e.target], e.time, e.seq});
    }
  }
  return TemporalGraph(std::move(names), std::move(edges));
}

}  // namespace tmpp
