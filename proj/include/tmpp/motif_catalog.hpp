#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "tmpp/temporal_graph.hpp"

namespace tmpp {

inline constexpr std::size_t kMotifCount = 36;
/// Live (motif, position) cells: 32 three-node motifs x 3 + 4 two-node x 2.
inline constexpr std::size_t kCellCount = 104;
/// Fixed file layout: every motif gets three position columns.
inline constexpr std::size_t kWideCellCount = kMotifCount * 3;

/// Identity of M_{row,col} in the 6x6 motif grid (both 1-based).
class MotifId {
 public:
  constexpr MotifId() = default;
  constexpr MotifId(int row, int col) : index_(static_cast<std::uint8_t>((row - 1) * 6 + (col - 1))) {}

  static constexpr MotifId from_index(std::size_t i) {
    MotifId m;
    m.index_ = static_cast<std::uint8_t>(i);
    return m;
  }

  [[nodiscard]] constexpr int row() const { return index_ / 6 + 1; }
  [[nodiscard]] constexpr int col() const { return index_ % 6 + 1; }
  /// Row-major index 0..35.
  [[nodiscard]] constexpr std::size_t index() const { return index_; }
  /// Compact label used in file headers, e.g. "M51".
  [[nodiscard]] std::string tag() const;
  /// Display label, e.g. "M5,1".
  [[nodiscard]] std::string display() const;

  friend constexpr bool operator==(MotifId, MotifId) = default;
  friend constexpr auto operator<=>(MotifId, MotifId) = default;

 private:
  std::uint8_t index_ = 0;
};

/// Directed edge over the symbolic labels a=0, b=1, c=2.
struct SymbolicEdge {
  std::uint8_t from = 0;
  std::uint8_t to = 0;
  friend constexpr bool operator==(SymbolicEdge, SymbolicEdge) = default;
};

/// Three ordered edges; the first is always (a,b) and labels are assigned by
/// first appearance.
struct MotifSignature {
  std::array<SymbolicEdge, 3> edges;
  friend constexpr bool operator==(const MotifSignature&, const MotifSignature&) = default;
};

/// Parses "ab-ba-ab" style text. Returns nullopt if malformed.
std::optional<MotifSignature> parse_signature(std::string_view text);
std::string to_string(const MotifSignature& sig);

const MotifSignature& signature_of(MotifId m);
std::optional<MotifId> motif_of(const MotifSignature& sig);

/// 2 for M5,1 M5,2 M6,1 M6,2, otherwise 3. Equals the number of positions.
int node_count(MotifId m);

/// Index of a live (motif, position) cell in [0, 104). Position is 1-based.
std::size_t cell_index(MotifId m, int position);
MotifId cell_motif(std::size_t cell);
int cell_position(std::size_t cell);
/// Column in the fixed 108-wide file layout.
inline constexpr std::size_t wide_index(MotifId m, int position) {
  return m.index() * 3 + static_cast<std::size_t>(position - 1);
}

/// A 3-edge temporal motif instance: which motif, and the node at each
/// position (position 1 = first edge's source, 2 = its target, 3 = the rest).
struct MotifInstance {
  MotifId motif;
  std::array<NodeId, 3> node_at{};
  int positions = 0;
};

/// Classifies three time-ordered edges. Returns nullopt when they span more
/// than three nodes.
std::optional<MotifInstance> classify_triple(const TemporalEdge& e1, const TemporalEdge& e2,
                                             const TemporalEdge& e3);

/// Writes `motif,row,col,nodes,edge1,edge2,edge3` for all 36 motifs.
void write_catalog(std::ostream& out);

}  // namespace tmpp
