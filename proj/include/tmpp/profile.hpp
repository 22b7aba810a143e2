#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tmpp/motif_counter.hpp"

namespace tmpp {

enum class ProfileKind {
  kPositioned,    ///< 104 (motif, position) cells
  kPositionless,  ///< 36 motifs, positions summed out
};

inline constexpr std::size_t dimension(ProfileKind kind) {
  return kind == ProfileKind::kPositioned ? kCellCount : kMotifCount;
}

struct DroppedNode {
  std::string name;
  std::uint64_t total = 0;
  friend bool operator==(const DroppedNode&, const DroppedNode&) = default;
};

/// L1-normalized participation profiles, one row per retained node.
class ProfileMatrix {
 public:
  ProfileMatrix() = default;
  /// `values` is row-major with dimension(kind) columns.
  ProfileMatrix(ProfileKind kind, std::vector<std::string> names, std::vector<double> values,
                std::vector<DroppedNode> dropped = {});

  [[nodiscard]] ProfileKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dimension(kind_); }
  [[nodiscard]] std::size_t node_count() const noexcept { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * dim(), dim());
  }
  /// Nodes removed by the participation filter, with their totals.
  [[nodiscard]] const std::vector<DroppedNode>& dropped() const noexcept { return dropped_; }

  friend bool operator==(const ProfileMatrix&, const ProfileMatrix&) = default;

 private:
  ProfileKind kind_ = ProfileKind::kPositioned;
  std::vector<std::string> names_;
  std::vector<double> values_;
  std::vector<DroppedNode> dropped_;
};

/// Keeps nodes with total participation >= min_motifs (and > 0), then divides
/// each row by its sum.
ProfileMatrix build_positioned(const PositionCountMatrix& counts, std::uint64_t min_motifs);

/// As build_positioned, after summing each motif's position cells.
ProfileMatrix build_positionless(const PositionCountMatrix& counts, std::uint64_t min_motifs);

ProfileMatrix build_profiles(const PositionCountMatrix& counts, ProfileKind kind,
                             std::uint64_t min_motifs);

/// Per-motif sums of a node's positioned counts (the unnormalized
/// positionless vector).
std::vector<std::uint64_t> positionless_counts(const PositionCountMatrix& counts, NodeId v);

}  // namespace tmpp
