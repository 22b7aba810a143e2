#include "tmpp/profile.hpp"

#include "tmpp/errors.hpp"

namespace tmpp {

ProfileMatrix::ProfileMatrix(ProfileKind kind, std::vector<std::string> names,
                             std::vector<double> values, std::vector<DroppedNode> dropped)
    : kind_(kind), names_(std::move(names)), values_(std::move(values)), dropped_(std::move(dropped)) {
  if (values_.size() != names_.size() * dim()) {
    throw ValidationError("profile matrix has " + std::to_string(values_.size()) + " values for " +
                          std::to_string(names_.size()) + " nodes of dimension " +
                          std::to_string(dim()));
  }
}

std::vector<std::uint64_t> positionless_counts(const PositionCountMatrix& counts, NodeId v) {
  std::vector<std::uint64_t> out(kMotifCount, 0);
  const auto r = counts.row(v);
  for (std::size_t c = 0; c < kCellCount; ++c) out[cell_motif(c).index()] += r[c];
  return out;
}

ProfileMatrix build_profiles(const PositionCountMatrix& counts, ProfileKind kind,
                             std::uint64_t min_motifs) {
  const std::size_t dim = dimension(kind);
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<DroppedNode> dropped;
  std::vector<std::uint64_t> raw(dim);

  for (NodeId v = 0; v < counts.node_count(); ++v) {
    if (kind == ProfileKind::kPositioned) {
      const auto r = counts.row(v);
      raw.assign(r.begin(), r.end());
    } else {
      raw = positionless_counts(counts, v);
    }
    std::uint64_t total = 0;
    for (auto x : raw) total += x;
    if (total == 0 || total < min_motifs) {
      dropped.push_back({counts.names()[v], total});
      continue;
    }
    names.push_back(counts.names()[v]);
    const double denom = static_cast<double>(total);
    for (auto x : raw) values.push_back(static_cast<double>(x) / denom);
  }
  return ProfileMatrix(kind, std::move(names), std::move(values), std::move(dropped));
}

ProfileMatrix build_positioned(const PositionCountMatrix& counts, std::uint64_t min_motifs) {
  return build_profiles(counts, ProfileKind::kPositioned, min_motifs);
}

ProfileMatrix build_positionless(const PositionCountMatrix& counts, std::uint64_t min_motifs) {
  return build_profiles(counts, ProfileKind::kPositionless, min_motifs);
}

}  // namespace tmpp
