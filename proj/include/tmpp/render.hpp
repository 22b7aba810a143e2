#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmpp/clustering.hpp"
#include "tmpp/profile.hpp"

namespace tmpp {

/// A 6x6 motif grid, row-major by (row, col) of M_{row,col}. Empty cells have
/// no such position (position 3 of a two-node motif).
using MotifGrid = std::array<std::optional<double>, kMotifCount>;

struct HeatmapSpec {
  std::string title;
  /// One grid per position (3) for positioned data, one grid otherwise.
  std::vector<MotifGrid> grids;
  std::vector<std::string> grid_titles;
  /// Value shaded darkest; lighter values scale linearly down to white.
  double scale_max = 1.0;
};

struct HeatmapOptions {
  std::string title;
  /// Fixed colour anchor for comparing several profiles. Without it each
  /// profile is scaled to its own maximum.
  std::optional<double> scale_max;
};

/// Arranges a profile or centroid into motif grids. Throws ValidationError
/// if the vector length does not match the kind.
HeatmapSpec make_heatmap_spec(std::span<const double> values, ProfileKind kind,
                              const HeatmapOptions& opts = {});

std::string render_heatmap(const HeatmapSpec& spec);

inline std::string heatmap_svg(std::span<const double> values, ProfileKind kind,
                               const HeatmapOptions& opts = {}) {
  return render_heatmap(make_heatmap_spec(values, kind, opts));
}

/// Single-hue ramp from white (0) to dark green (1), as "#rrggbb".
std::string ramp_color(double t);

/// Dendrogram drawing with leaves in Dendrogram::leaf_order(). Links inside
/// each of the k_highlight clusters take that cluster's colour; cluster 0 is
/// leftmost.
std::string dendrogram_svg(const Dendrogram& d, const std::vector<std::string>& names,
                           std::size_t k_highlight);

/// Colour of flat cluster `c` in dendrogram drawings.
std::string cluster_color(std::size_t c);

}  // namespace tmpp
