#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmpp/motif_catalog.hpp"
#include "tmpp/temporal_graph.hpp"

namespace tmpp {

/// How to treat triples that contain edges with equal timestamps.
enum class TiePolicy {
  kSeqOrder,     ///< equal times are ordered by input sequence
  kExcludeTies,  ///< skip any triple with two equal timestamps
};

struct CountOptions {
  double delta = 0.0;
  TiePolicy ties = TiePolicy::kSeqOrder;
  /// Worker threads for count_motifs. Results do not depend on this value.
  unsigned threads = 1;
};

/// Per-node participation counts over the 104 live (motif, position) cells.
class PositionCountMatrix {
 public:
  PositionCountMatrix() = default;
  PositionCountMatrix(std::vector<std::string> names, std::optional<double> delta);
  /// Adopts row-major node x 104 cells (file loading); per-motif instance
  /// totals are derived from the cells.
  PositionCountMatrix(std::vector<std::string> names, std::optional<double> delta,
                      std::vector<std::uint64_t> cells);

  [[nodiscard]] std::size_t node_count() const noexcept { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  /// The window used for counting; absent when loaded from a file.
  [[nodiscard]] std::optional<double> delta() const noexcept { return delta_; }

  [[nodiscard]] std::span<const std::uint64_t> row(NodeId v) const {
    return {cells_.data() + static_cast<std::size_t>(v) * kCellCount, kCellCount};
  }
  [[nodiscard]] std::uint64_t at(NodeId v, std::size_t cell) const {
    return cells_[static_cast<std::size_t>(v) * kCellCount + cell];
  }
  /// Sum of a node's cells: the number of motif instances it takes part in.
  [[nodiscard]] std::uint64_t node_total(NodeId v) const;
  /// Instances per motif, row-major M1,1 .. M6,6.
  [[nodiscard]] const std::array<std::uint64_t, kMotifCount>& motif_totals() const noexcept {
    return motif_totals_;
  }

  /// Records one instance: each participating node's cell is incremented.
  void add_instance(const MotifInstance& inst);
  /// Cell-wise sum. Both operands must cover the same nodes.
  PositionCountMatrix& operator+=(const PositionCountMatrix& other);

  friend bool operator==(const PositionCountMatrix&, const PositionCountMatrix&) = default;

 private:
  void refresh_totals();

  std::vector<std::string> names_;
  std::optional<double> delta_;
  std::vector<std::uint64_t> cells_;
  std::array<std::uint64_t, kMotifCount> motif_totals_{};
};

/// Counts every ordered edge triple i<j<k with t_k - t_i <= delta that forms a
/// 2- or 3-node motif. Only triples inside a sliding time window around
/// each first edge, and sharing its endpoints, are visited.
PositionCountMatrix count_motifs(const TemporalGraph& g, const CountOptions& opts);

/// Same contract as count_motifs by plain enumeration of all C(m,3) triples.
PositionCountMatrix brute_force_count(const TemporalGraph& g, const CountOptions& opts);

}  // namespace tmpp
