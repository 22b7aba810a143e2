#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tmpp/clustering.hpp"
#include "tmpp/motif_counter.hpp"
#include "tmpp/profile.hpp"

namespace tmpp {

/// Shortest decimal text that reads back to exactly `x`.
std::string format_real(double x);

/// Column names after `node`: M11_p1, M11_p2, M11_p3, ..., M66_p3 for
/// positioned data, M11 .. M66 for positionless.
std::vector<std::string> profile_columns(ProfileKind kind);

/// Count matrix CSV in the fixed 108-column layout. Position-3 columns of
/// two-node motifs are always zero.
void write_counts_csv(std::ostream& out, const PositionCountMatrix& counts);
PositionCountMatrix read_counts_csv(std::istream& in);

/// `motif,nodes,instances` summary, one row per motif.
void write_motif_totals_csv(std::ostream& out, const PositionCountMatrix& counts);

/// Profile CSV. Positioned profiles use the count layout; positionless ones
/// use one column per motif. The kind is recovered from the header.
void write_profiles_csv(std::ostream& out, const ProfileMatrix& profiles);
ProfileMatrix read_profiles_csv(std::istream& in);

/// `node,total` for nodes removed by the participation filter.
void write_dropped_csv(std::ostream& out, const ProfileMatrix& profiles);

/// Line-oriented dendrogram: a `#` metadata block, `leaf <id> <name>` lines,
/// then one `<left> <right> <height> <size>` line per merge.
void write_dendrogram(std::ostream& out, const Dendrogram& d, const std::vector<std::string>& names);
Dendrogram read_dendrogram(std::istream& in, std::vector<std::string>* names = nullptr);

/// `node,cluster`.
void write_clusters_csv(std::ostream& out, const FlatClustering& c, const std::vector<std::string>& names);

/// `cluster,size,<profile columns...>`.
void write_centroids_csv(std::ostream& out, ProfileKind kind, const std::vector<double>& centroids,
                         const FlatClustering& clustering);

struct CentroidTable {
  ProfileKind kind = ProfileKind::kPositioned;
  std::vector<std::size_t> sizes;
  std::vector<double> values;  ///< row-major clusters x dimension(kind)
};
CentroidTable read_centroids_csv(std::istream& in);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace tmpp
