#include "tmpp/scenarios.hpp"

#include "tmpp/errors.hpp"

namespace tmpp {

namespace {

using K = ExcitationKind;

// Symmetric sparse baselines. Block-1 nodes answer block-0 senders far more
// often than the reverse, so 0-1 exchanges start at block 0. Fast decay keeps
// most triples inside one pair.
BlockHawkesParams scenario_one(std::size_t n) {
  BlockHawkesParams p;
  p.n_nodes = n;
  p.block_probs = {0.5, 0.5};
  p.horizon = 2000.0;
  p.baseline = {0.0007, 0.0007,
                0.0007, 0.0007};
  p.excitations = {
      {0, 0, K::kSelf, 0.25, 4.0},
      {0, 1, K::kSelf, 0.25, 4.0},
      {1, 0, K::kSelf, 0.25, 4.0},
      {1, 1, K::kSelf, 0.25, 4.0},
      {1, 0, K::kReciprocal, 0.72, 4.0},
  };
  return p;
}

// Total fan-in mass 0.7 is spread over the n-2 triggering pairs.
BlockHawkesParams scenario_two(std::size_t n) {
  BlockHawkesParams p;
  p.n_nodes = n;
  p.block_probs = {0.5, 0.5};
  p.horizon = 500.0;
  p.baseline = {0.002, 0.01,
                0.01, 0.002};
  const double fan = n > 2 ? 0.7 / static_cast<double>(n - 2) : 0.0;
  p.excitations = {
      {0, 1, K::kSelf, 0.2, 4.0},
      {0, 1, K::kSharedReceiver, fan, 4.0},
      {1, 0, K::kSelf, 0.2, 4.0},
      {1, 0, K::kBroadcast, fan, 4.0},
  };
  return p;
}

}  // namespace

BlockHawkesParams scenario_params(int which, std::size_t n_nodes) {
  BlockHawkesParams p;
  switch (which) {
    case 1: p = scenario_one(n_nodes); break;
    case 2: p = scenario_two(n_nodes); break;
    default: throw ValidationError("unknown scenario " + std::to_string(which));
  }
  p.validate();
  return p;
}

double scenario_delta(int which) {
  switch (which) {
    case 1:
    case 2: return 1.0;
    default: throw ValidationError("unknown scenario " + std::to_string(which));
  }
}

}  // namespace tmpp
