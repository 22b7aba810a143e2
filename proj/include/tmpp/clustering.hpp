#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tmpp/profile.hpp"

namespace tmpp {

/// One agglomeration step. Leaves are 0..n-1; the i-th merge creates cluster
/// n+i. `left` is always the smaller id.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
  friend bool operator==(const Merge&, const Merge&) = default;
};

/// Binary merge tree over n leaves with n-1 merges.
class Dendrogram {
 public:
  Dendrogram() = default;
  /// Validates child ids, consumption, sizes and (within rounding)
  /// non-decreasing heights; throws ValidationError otherwise.
  Dendrogram(std::size_t leaf_count, std::vector<Merge> merges);

  [[nodiscard]] std::size_t leaf_count() const noexcept { return leaves_; }
  [[nodiscard]] const std::vector<Merge>& merges() const noexcept { return merges_; }
  /// Leaves in drawing order: depth-first from the root, left child first.
  [[nodiscard]] std::vector<std::size_t> leaf_order() const;

  friend bool operator==(const Dendrogram&, const Dendrogram&) = default;

 private:
  std::size_t leaves_ = 0;
  std::vector<Merge> merges_;
};

/// Ward's minimum-variance agglomeration. The merge height is the increase in
/// within-cluster sum of squares, |I||J|/(|I|+|J|) * ||c_I - c_J||^2. Ties go to
/// the smallest (left id, right id).
Dendrogram ward_linkage(std::span<const double> points, std::size_t dim);
Dendrogram ward_linkage(const ProfileMatrix& profiles);

struct FlatClustering {
  std::vector<int> labels;  ///< per input row, in 0..k-1
  int k = 0;
  friend bool operator==(const FlatClustering&, const FlatClustering&) = default;
};

/// Undoes the last k-1 merges. Clusters are numbered by their leftmost leaf in
/// leaf_order(), so cluster 0 is drawn leftmost.
FlatClustering cut(const Dendrogram& d, std::size_t k);

/// Mean of member rows for each cluster; row-major k x dim.
std::vector<double> centroids(std::span<const double> points, std::size_t dim,
                              const FlatClustering& clustering);

/// Best fraction of matching labels over all one-to-one relabelings of the
/// predicted clusters onto the true classes.
double permutation_accuracy(std::span<const int> predicted, std::span<const int> truth);

/// Maximum-weight assignment on a square matrix (row-major, size n x n).
/// Returns the column assigned to each row.
std::vector<std::size_t> max_weight_assignment(std::span<const double> weights, std::size_t n);

}  // namespace tmpp
