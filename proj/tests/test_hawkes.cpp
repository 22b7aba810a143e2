#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "tmpp/errors.hpp"
#include "tmpp/hawkes.hpp"
#include "tmpp/motif_counter.hpp"
#include "tmpp/scenarios.hpp"

namespace tmpp {
namespace {

BlockHawkesParams one_pair(double mu, double horizon) {
  BlockHawkesParams p;
  p.n_nodes = 2;
  p.block_probs = {0.5, 0.5};
  p.horizon = horizon;
  p.baseline = {0.0, mu, 0.0, 0.0};
  return p;
}

TEST(Intensity, BaselineAndSingleJump) {
  auto p = one_pair(0.3, 10);
  p.excitations = {{0, 1, ExcitationKind::kSelf, 0.5, 2.0}};
  const std::vector<int> blocks = {0, 1};
  EXPECT_EQ(intensity(p, blocks, {}, 0, 1, 4.0), 0.3);
  const std::vector<HawkesEvent> h = {{0, 1, 2.0}};
  EXPECT_DOUBLE_EQ(intensity(p, blocks, h, 0, 1, 3.0), 0.3 + 0.5 * 2 * std::exp(-2.0));
  // Reverse pair has no excitation entry for its block pair.
  EXPECT_EQ(intensity(p, blocks, h, 1, 0, 3.0), 0.0);
}

TEST(Intensity, KindsApplyToTheRightEvents) {
  BlockHawkesParams p;
  p.n_nodes = 4;
  p.block_probs = {1.0};
  p.horizon = 1;
  p.baseline = {0.0};
  const std::vector<int> blocks = {0, 0, 0, 0};
  auto lambda = [&](ExcitationKind kind, HawkesEvent e) {
    p.excitations = {{0, 0, kind, 0.1, 1.0}};
    const std::vector<HawkesEvent> h = {e};
    return intensity(p, blocks, h, 0, 1, e.time) > 0.0;  // pair (0,1)
  };
  EXPECT_TRUE(lambda(ExcitationKind::kSelf, {0, 1, 0}));
  EXPECT_FALSE(lambda(ExcitationKind::kSelf, {1, 0, 0}));
  EXPECT_TRUE(lambda(ExcitationKind::kReciprocal, {1, 0, 0}));
  EXPECT_TRUE(lambda(ExcitationKind::kSharedReceiver, {2, 1, 0}));
  EXPECT_FALSE(lambda(ExcitationKind::kSharedReceiver, {0, 1, 0}));
  EXPECT_TRUE(lambda(ExcitationKind::kBroadcast, {0, 3, 0}));
  EXPECT_FALSE(lambda(ExcitationKind::kBroadcast, {0, 1, 0}));
  EXPECT_FALSE(lambda(ExcitationKind::kBroadcast, {3, 0, 0}));
}

TEST(Intensity, ZeroAlphaIsBaseline) {
  auto p = scenario_params(2);
  for (auto& e : p.excitations) e.alpha = 0.0;
  std::vector<int> blocks(p.n_nodes);
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] = static_cast<int>(i % 2);
  const auto net = simulate_with_blocks(p, blocks, 9);
  std::vector<HawkesEvent> h;
  for (const auto& e : net.graph.edges()) h.push_back({e.source, e.target, e.time});
  for (double t : {1.0, 50.0, 400.0}) {
    EXPECT_EQ(intensity(p, blocks, h, 0, 1, t), p.baseline_rate(0, 1));
    EXPECT_EQ(intensity(p, blocks, h, 2, 4, t), p.baseline_rate(0, 0));
  }
}

TEST(Params, Validation) {
  auto p = one_pair(0.1, 10);
  EXPECT_NO_THROW(p.validate());
  p.excitations = {{0, 1, ExcitationKind::kSelf, 1.0, 1.0}};
  EXPECT_THROW(p.validate(), ValidationError);
  p.excitations = {{0, 1, ExcitationKind::kSelf, 0.5, 0.0}};
  EXPECT_THROW(p.validate(), ValidationError);
  p = one_pair(0.1, 10);
  p.block_probs = {0.7, 0.7};
  EXPECT_THROW(p.validate(), ValidationError);
  p = one_pair(-0.1, 10);
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(Params, FanInCountsTowardStability) {
  BlockHawkesParams p;
  p.n_nodes = 12;
  p.block_probs = {1.0};
  p.horizon = 1;
  p.baseline = {0.01};
  p.excitations = {{0, 0, ExcitationKind::kSharedReceiver, 0.1, 1.0}};
  EXPECT_DOUBLE_EQ(p.branching_ratio(), 1.0);  // ten triggering pairs
  EXPECT_THROW(p.validate(), ValidationError);
  p.excitations[0].alpha = 0.09;
  EXPECT_NO_THROW(p.validate());
}

TEST(Params, ShippedScenariosAreStable) {
  for (int s : {1, 2}) {
    const auto p = scenario_params(s);
    EXPECT_LT(p.branching_ratio(), 1.0);
    EXPECT_EQ(p.n_nodes, 20u);
    EXPECT_GT(scenario_delta(s), 0.0);
  }
  EXPECT_THROW(scenario_params(3), ValidationError);
}

TEST(Params, JsonRoundTrip) {
  const auto p = scenario_params(2, 9);
  std::ostringstream out;
  write_params(out, p);
  std::istringstream in(out.str());
  const auto q = parse_params(in);
  EXPECT_EQ(q.n_nodes, p.n_nodes);
  EXPECT_EQ(q.block_probs, p.block_probs);
  EXPECT_EQ(q.horizon, p.horizon);
  EXPECT_EQ(q.baseline, p.baseline);
  ASSERT_EQ(q.excitations.size(), p.excitations.size());
  for (std::size_t i = 0; i < q.excitations.size(); ++i) {
    EXPECT_EQ(q.excitations[i].kind, p.excitations[i].kind);
    EXPECT_EQ(q.excitations[i].alpha, p.excitations[i].alpha);
  }
  std::istringstream bad("{\"n_nodes\": 3}");
  EXPECT_THROW(parse_params(bad), ValidationError);
  std::istringstream junk("not json");
  EXPECT_THROW(parse_params(junk), ValidationError);
}

TEST(Simulate, ZeroRatesGiveNoEdges) {
  const auto net = simulate(one_pair(0.0, 100), 1);
  EXPECT_EQ(net.graph.edge_count(), 0u);
  EXPECT_EQ(net.graph.node_count(), 2u);
}

TEST(Simulate, SameSeedSameBytes) {
  const auto p = scenario_params(1);
  auto text = [&](std::uint64_t seed) {
    const auto net = simulate(p, seed);
    std::ostringstream out;
    write_edge_list(out, net.graph);
    write_block_labels(out, net);
    return out.str();
  };
  EXPECT_EQ(text(5), text(5));
  EXPECT_NE(text(5), text(6));
}

TEST(Simulate, TimesSortedAndInsideHorizon) {
  const auto p = scenario_params(2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto net = simulate(p, seed);
    const auto e = net.graph.edges();
    for (std::size_t i = 0; i < e.size(); ++i) {
      EXPECT_GE(e[i].time, 0.0);
      EXPECT_LE(e[i].time, p.horizon);
      if (i > 0) EXPECT_GT(e[i].time, e[i - 1].time);
    }
    ASSERT_EQ(net.blocks.size(), p.n_nodes);
    for (int b : net.blocks) EXPECT_TRUE(b == 0 || b == 1);
  }
}

TEST(Simulate, NodeNamesSortInIdOrder) {
  EXPECT_EQ(simulated_node_name(3, 20), "n03");
  EXPECT_EQ(simulated_node_name(19, 20), "n19");
  EXPECT_EQ(simulated_node_name(7, 5), "n7");
}

// One active pair with mu * T = 5 and no excitation: counts are Poisson(5).
TEST(SimulateStatistics, PoissonMomentsAndFit) {
  const auto p = one_pair(0.05, 100);
  const std::vector<int> blocks = {0, 1};
  constexpr int kSeeds = 2000;
  std::vector<int> counts;
  for (int s = 0; s < kSeeds; ++s) {
    counts.push_back(static_cast<int>(simulate_with_blocks(p, blocks, 1000 + static_cast<std::uint64_t>(s))
                                          .graph.edge_count()));
  }
  const auto fit = test::poisson_fit(counts, 5.0, 1, 10);  // bins <=1, 2..9, >=10
  EXPECT_NEAR(fit.mean, 5.0, 0.25);
  EXPECT_NEAR(fit.variance, 5.0, 0.7);
  ASSERT_GE(fit.min_expected, 5.0);
  EXPECT_LT(fit.chi2, fit.critical);
}

TEST(SimulateStatistics, ExcitationRaisesMeanAsPredicted) {
  // Stationary mean count for a self-exciting pair: mu*T / (1 - alpha).
  auto p = one_pair(0.05, 2000);
  p.excitations = {{0, 1, ExcitationKind::kSelf, 0.5, 3.0}};
  const std::vector<int> blocks = {0, 1};
  double total = 0.0;
  constexpr int kSeeds = 200;
  for (int s = 0; s < kSeeds; ++s) {
    total += static_cast<double>(simulate_with_blocks(p, blocks, static_cast<std::uint64_t>(s)).graph.edge_count());
  }
  EXPECT_NEAR(total / kSeeds, 0.05 * 2000 / 0.5, 8.0);
}

// Scenario 2 stars: block-0 senders converge on block-1 receivers and
// block-1 senders fan out.
TEST(Scenarios, StarRolesFollowBlocks) {
  const auto p = scenario_params(2);
  double in_star_b0 = 0, in_star_b1 = 0, out_star_b0 = 0, out_star_b1 = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = simulate(p, seed);
    const auto c = count_motifs(net.graph, {scenario_delta(2), TiePolicy::kSeqOrder, 1});
    for (NodeId v = 0; v < c.node_count(); ++v) {
      double in_star = 0, out_star = 0;
      for (auto m : {MotifId(1, 1), MotifId(1, 6), MotifId(6, 6)}) {
        in_star += static_cast<double>(c.at(v, cell_index(m, 1)) + c.at(v, cell_index(m, 3)));
      }
      for (auto m : {MotifId(4, 1), MotifId(4, 3), MotifId(6, 3)}) {
        out_star += static_cast<double>(c.at(v, cell_index(m, 1)));
      }
      (net.blocks[v] == 0 ? in_star_b0 : in_star_b1) += in_star;
      (net.blocks[v] == 0 ? out_star_b0 : out_star_b1) += out_star;
    }
  }
  EXPECT_GT(in_star_b0, 3 * in_star_b1);
  EXPECT_GT(out_star_b1, 3 * out_star_b0);
}

}  // namespace
}  // namespace tmpp
