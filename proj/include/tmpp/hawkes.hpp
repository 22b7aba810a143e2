#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tmpp/temporal_graph.hpp"

namespace tmpp {

/// Which past events excite the directed pair (u, v).
enum class ExcitationKind {
  kSelf,            ///< events on (u, v)
  kReciprocal,      ///< events on (v, u)
  kSharedReceiver,  ///< events on (x, v), x not in {u, v}: others hitting v
  kBroadcast,       ///< events on (u, w), w not in {u, v}: u sending elsewhere
};

std::string_view to_string(ExcitationKind kind);
ExcitationKind parse_excitation_kind(std::string_view text);

/// Exponential kernel alpha * beta * exp(-beta * dt) applied to the pairs
/// whose sender is in `sender_block` and receiver in `receiver_block`.
/// alpha is the integrated kernel mass.
struct Excitation {
  std::size_t sender_block = 0;
  std::size_t receiver_block = 0;
  ExcitationKind kind = ExcitationKind::kSelf;
  double alpha = 0.0;
  double beta = 1.0;
};

/// Block-structured multivariate Hawkes network model.
struct BlockHawkesParams {
  std::size_t n_nodes = 20;
  std::vector<double> block_probs{0.5, 0.5};
  double horizon = 1.0;
  /// Baseline rate per directed node pair, row-major n_blocks x n_blocks
  /// indexed by (sender block, receiver block).
  std::vector<double> baseline{0.0, 0.0, 0.0, 0.0};
  std::vector<Excitation> excitations;

  [[nodiscard]] std::size_t n_blocks() const noexcept { return block_probs.size(); }
  [[nodiscard]] double baseline_rate(std::size_t sender_block, std::size_t receiver_block) const {
    return baseline.at(sender_block * n_blocks() + receiver_block);
  }

  /// Largest total excitation mass any pair process can receive, counting
  /// the n-2 possible triggering pairs of shared-receiver and broadcast
  /// kinds. Bounds the spectral radius of the branching matrix.
  [[nodiscard]] double branching_ratio() const;

  /// Throws ValidationError on malformed values or branching_ratio() >= 1.
  void validate() const;
};

/// Reads/writes the JSON parameter schema documented in the README.
BlockHawkesParams parse_params(std::istream& in);
BlockHawkesParams read_params_file(const std::string& path);
void write_params(std::ostream& out, const BlockHawkesParams& params);

struct HawkesEvent {
  NodeId source = 0;
  NodeId target = 0;
  double time = 0.0;
};

/// Conditional intensity of pair (u, v) at time t given the full event
/// history (all events before t). Evaluated directly from the history.
double intensity(const BlockHawkesParams& params, std::span<const int> blocks,
                 std::span<const HawkesEvent> history, NodeId u, NodeId v, double t);

struct SimulatedNetwork {
  TemporalGraph graph;
  std::vector<int> blocks;  ///< per node id in `graph`
};

/// Draws block labels, then simulates all directed pairs on [0, horizon] by
/// Ogata thinning of the summed intensity. Deterministic in `seed`.
SimulatedNetwork simulate(const BlockHawkesParams& params, std::uint64_t seed);

/// Simulation with fixed block labels.
SimulatedNetwork simulate_with_blocks(const BlockHawkesParams& params, std::vector<int> blocks,
                                      std::uint64_t seed);

/// Node name used by the simulator for node i, zero-padded so names sort
/// in id order.
std::string simulated_node_name(std::size_t i, std::size_t n_nodes);

void write_block_labels(std::ostream& out, const SimulatedNetwork& net);

}  // namespace tmpp
