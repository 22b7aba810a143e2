#pragma once

#include "tmpp/hawkes.hpp"

namespace tmpp {

/// Shipped parameter sets for the two two-block simulation scenarios.
///
/// Scenario 1 produces mostly two-node motifs: every pair repeats itself,
/// and block-1 nodes answer block-0 senders, so block 0 holds position 1 of
/// M5,1 M5,2 M6,2 and block 1 holds position 2.
///
/// Scenario 2 produces three-node stars: block-0 senders pile onto the same
/// block-1 receiver (M1,1 M1,6 M6,6) and block-1 nodes fan out to several
/// block-0 nodes (M4,1 M4,3 M6,3).
BlockHawkesParams scenario_params(int which, std::size_t n_nodes = 20);

/// Counting window to use with the shipped scenarios.
double scenario_delta(int which);

}  // namespace tmpp
