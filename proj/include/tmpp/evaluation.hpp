#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tmpp/clustering.hpp"
#include "tmpp/hawkes.hpp"
#include "tmpp/motif_counter.hpp"
#include "tmpp/profile.hpp"

namespace tmpp {

/// Ward dendrogram, its k-cut and the cluster centroids for one profile set.
struct ClusterResult {
  Dendrogram dendrogram;
  FlatClustering clustering;
  std::vector<double> centroids;  ///< row-major k x dim
};

/// Clusters profiles into min(k, rows) groups. A single row yields one
/// cluster without a dendrogram merge.
ClusterResult cluster_profiles(const ProfileMatrix& profiles, std::size_t k);

struct EvalOptions {
  CountOptions count;
  std::uint64_t min_motifs = 1;
  std::size_t k = 2;
  std::size_t runs = 100;
  std::uint64_t first_seed = 0;
  unsigned workers = 1;
};

struct RunOutcome {
  std::uint64_t seed = 0;
  std::size_t edges = 0;
  /// Accuracy over the nodes that received a profile; empty if none did.
  std::optional<double> positioned;
  std::optional<double> positionless;
  std::size_t profiled = 0;
};

struct MethodSummary {
  double mean = 0.0;
  std::optional<double> std_error;  ///< needs at least two scored runs
  std::size_t scored_runs = 0;
};

struct EvalReport {
  std::vector<RunOutcome> runs;
  MethodSummary positioned;
  MethodSummary positionless;
};

/// Block-recovery accuracy of a k-cut of the profiles against true blocks.
/// `blocks` is indexed by node id of `graph`.
std::optional<double> block_accuracy(const ProfileMatrix& profiles, const TemporalGraph& graph,
                                     std::span<const int> blocks, std::size_t k);

RunOutcome evaluate_run(const BlockHawkesParams& params, const EvalOptions& opts, std::uint64_t seed);

/// Runs seeds first_seed .. first_seed+runs-1, fanned out over `workers`.
EvalReport evaluate_scenario(const BlockHawkesParams& params, const EvalOptions& opts);

MethodSummary summarize(std::span<const std::optional<double>> values);

/// `method,mean,std_error,runs` rows; std_error prints "NA" when undefined.
void write_eval_report(std::ostream& out, const EvalReport& report);
/// `seed,edges,profiled,positioned,positionless` rows.
void write_eval_runs(std::ostream& out, const EvalReport& report);

}  // namespace tmpp
