#include "tmpp/motif_counter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "tmpp/errors.hpp"

namespace tmpp {

PositionCountMatrix::PositionCountMatrix(std::vector<std::string> names, std::optional<double> delta)
    : names_(std::move(names)), delta_(delta), cells_(names_.size() * kCellCount, 0) {}

std::uint64_t PositionCountMatrix::node_total(NodeId v) const {
  const auto r = row(v);
  return std::accumulate(r.begin(), r.end(), std::uint64_t{0});
}

void PositionCountMatrix::add_instance(const MotifInstance& inst) {
  const std::size_t base = cell_index(inst.motif, 1);
  for (int p = 0; p < inst.positions; ++p) {
    ++cells_[static_cast<std::size_t>(inst.node_at[p]) * kCellCount + base + p];
  }
  ++motif_totals_[inst.motif.index()];
}

PositionCountMatrix::PositionCountMatrix(std::vector<std::string> names, std::optional<double> delta,
                                         std::vector<std::uint64_t> cells)
    : names_(std::move(names)), delta_(delta), cells_(std::move(cells)) {
  if (cells_.size() != names_.size() * kCellCount) throw ValidationError("count matrix shape mismatch");
  refresh_totals();
}

void PositionCountMatrix::refresh_totals() {
  std::array<std::uint64_t, kMotifCount> per_motif_cells{};
  for (std::size_t v = 0; v < names_.size(); ++v) {
    for (std::size_t c = 0; c < kCellCount; ++c) {
      per_motif_cells[cell_motif(c).index()] += cells_[v * kCellCount + c];
    }
  }
  for (std::size_t m = 0; m < kMotifCount; ++m) {
    motif_totals_[m] = per_motif_cells[m] / static_cast<std::uint64_t>(tmpp::node_count(MotifId::from_index(m)));
  }
}

PositionCountMatrix& PositionCountMatrix::operator+=(const PositionCountMatrix& other) {
  if (other.cells_.size() != cells_.size()) throw ValidationError("count matrix shape mismatch");
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
  for (std::size_t m = 0; m < kMotifCount; ++m) motif_totals_[m] += other.motif_totals_[m];
  return *this;
}

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ValidationError("delta must be a positive finite number");
  }
}

bool tied(const TemporalEdge& a, const TemporalEdge& b) { return a.time == b.time; }

// Counts all triples whose first edge index lies in [first, last).
void count_range(const TemporalGraph& g, const CountOptions& opts,
                 const std::vector<std::vector<std::uint32_t>>& incident, std::size_t first,
                 std::size_t last, PositionCountMatrix& out) {
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  const bool exclude = opts.ties == TiePolicy::kExcludeTies;
  std::vector<std::uint32_t> window;

  std::size_t end = first;
  for (std::size_t i = first; i < last; ++i) {
    const auto& ei = edges[i];
    end = std::max(end, i + 1);
    while (end < m && edges[end].time - ei.time <= opts.delta) ++end;
    if (end - i < 3) continue;

    // Any edge of a 2- or 3-node motif starting at e_i touches e_i's source
    // or target, so the candidates are the union of their incidence lists.
    const auto& inc_u = incident[ei.source];
    const auto& inc_v = incident[ei.target];
    auto pu = std::upper_bound(inc_u.begin(), inc_u.end(), static_cast<std::uint32_t>(i));
    auto pv = std::upper_bound(inc_v.begin(), inc_v.end(), static_cast<std::uint32_t>(i));
    window.clear();
    while (true) {
      const std::uint32_t a = (pu != inc_u.end() && *pu < end) ? *pu : UINT32_MAX;
      const std::uint32_t b = (pv != inc_v.end() && *pv < end) ? *pv : UINT32_MAX;
      if (a == UINT32_MAX && b == UINT32_MAX) break;
      if (a == b) {
        window.push_back(a);
        ++pu;
        ++pv;
      } else if (a < b) {
        window.push_back(a);
        ++pu;
      } else {
        window.push_back(b);
        ++pv;
      }
    }

    for (std::size_t a = 0; a < window.size(); ++a) {
      const auto& ej = edges[window[a]];
      if (exclude && tied(ei, ej)) continue;
      for (std::size_t b = a + 1; b < window.size(); ++b) {
        const auto& ek = edges[window[b]];
        if (exclude && tied(ej, ek)) continue;
        if (const auto inst = classify_triple(ei, ej, ek)) out.add_instance(*inst);
      }
    }
  }
}

}  // namespace

PositionCountMatrix count_motifs(const TemporalGraph& g, const CountOptions& opts) {
  check_delta(opts.delta);
  std::vector<std::vector<std::uint32_t>> incident(g.node_count());
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    incident[edges[i].source].push_back(static_cast<std::uint32_t>(i));
    incident[edges[i].target].push_back(static_cast<std::uint32_t>(i));
  }

  PositionCountMatrix result(g.names(), opts.delta);
  const std::size_t m = edges.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(m / 64 + 1)));
  if (workers == 1) {
    count_range(g, opts, incident, 0, m, result);
    return result;
  }

  std::vector<PositionCountMatrix> partial(workers, PositionCountMatrix(g.names(), opts.delta));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t first = m * w / workers;
      const std::size_t last = m * (w + 1) / workers;
      pool.emplace_back([&, w, first, last] { count_range(g, opts, incident, first, last, partial[w]); });
    }
  }
  for (const auto& p : partial) result += p;
  return result;
}

PositionCountMatrix brute_force_count(const TemporalGraph& g, const CountOptions& opts) {
  check_delta(opts.delta);
  PositionCountMatrix result(g.names(), opts.delta);
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  const bool exclude = opts.ties == TiePolicy::kExcludeTies;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        if (edges[k].time - edges[i].time > opts.delta) continue;
        if (exclude && (edges[i].time == edges[j].time || edges[j].time == edges[k].time ||
                        edges[i].time == edges[k].time)) {
          continue;
        }
        if (const auto inst = classify_triple(edges[i], edges[j], edges[k])) result.add_instance(*inst);
      }
    }
  }
  return result;
}

}  // namespace tmpp
