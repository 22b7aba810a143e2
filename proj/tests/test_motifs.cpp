#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "test_support.hpp"
#include "tmpp/errors.hpp"
#include "tmpp/motif_catalog.hpp"
#include "tmpp/motif_counter.hpp"

namespace tmpp {
namespace {

using test::parse;
using test::toy_graph;

MotifId sig(const char* text) {
  const auto s = parse_signature(text);
  EXPECT_TRUE(s.has_value()) << text;
  const auto m = motif_of(*s);
  EXPECT_TRUE(m.has_value()) << text;
  return *m;
}

TEST(Catalog, AnchorRows) {
  EXPECT_EQ(sig("ab-ba-ab"), MotifId(5, 1));
  EXPECT_EQ(sig("ab-ca-ac"), MotifId(3, 3));
  EXPECT_EQ(MotifId(5, 1).display(), "M5,1");
  EXPECT_EQ(MotifId(5, 1).tag(), "M51");
}

TEST(Catalog, SizeAndTwoNodeMotifs) {
  std::set<std::string> seen;
  std::set<std::size_t> two_node;
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    const auto m = MotifId::from_index(i);
    seen.insert(to_string(signature_of(m)));
    EXPECT_EQ(motif_of(signature_of(m)), m);
    if (node_count(m) == 2) two_node.insert(i);
  }
  EXPECT_EQ(seen.size(), 36u);
  EXPECT_EQ(two_node, (std::set<std::size_t>{MotifId(5, 1).index(), MotifId(5, 2).index(),
                                             MotifId(6, 1).index(), MotifId(6, 2).index()}));
}

// Every 3-edge sequence over {a,b,c} starting with (a,b) maps to exactly one
// catalog entry.
TEST(Catalog, CoversAllCanonicalSequences) {
  std::set<std::size_t> hit;
  int sequences = 0;
  for (int e2 = 0; e2 < 9; ++e2) {
    for (int e3 = 0; e3 < 9; ++e3) {
      MotifSignature s{{SymbolicEdge{0, 1}, SymbolicEdge{static_cast<std::uint8_t>(e2 / 3),
                                                         static_cast<std::uint8_t>(e2 % 3)},
                        SymbolicEdge{static_cast<std::uint8_t>(e3 / 3), static_cast<std::uint8_t>(e3 % 3)}}};
      if (s.edges[1].from == s.edges[1].to || s.edges[2].from == s.edges[2].to) continue;
      const bool c_in_2 = s.edges[1].from == 2 || s.edges[1].to == 2;
      const bool c_in_3 = s.edges[2].from == 2 || s.edges[2].to == 2;
      ++sequences;
      const auto m = motif_of(s);
      ASSERT_TRUE(m.has_value()) << to_string(s);
      EXPECT_TRUE(hit.insert(m->index()).second) << to_string(s);
      EXPECT_EQ(node_count(*m), (c_in_2 || c_in_3) ? 3 : 2);
    }
  }
  EXPECT_EQ(sequences, 36);
  EXPECT_EQ(hit.size(), 36u);
}

TEST(Catalog, SignatureParsing) {
  EXPECT_FALSE(parse_signature("ab-ba").has_value());
  EXPECT_FALSE(parse_signature("ab-bb-ab").has_value());
  EXPECT_FALSE(parse_signature("ab-ba-xz").has_value());
  EXPECT_EQ(to_string(*parse_signature("ab-cb-ac")), "ab-cb-ac");
}

TEST(Catalog, CellLayout) {
  std::size_t live = 0;
  for (std::size_t i = 0; i < kMotifCount; ++i) {
    const auto m = MotifId::from_index(i);
    for (int p = 1; p <= node_count(m); ++p) {
      const auto c = cell_index(m, p);
      EXPECT_EQ(cell_motif(c), m);
      EXPECT_EQ(cell_position(c), p);
      ++live;
    }
  }
  EXPECT_EQ(live, kCellCount);
}

TEST(Classify, CatalogRows) {
  const TemporalEdge ab{0, 1, 1, 0}, ac{0, 2, 2, 1}, ba{1, 0, 3, 2}, ab2{0, 1, 4, 3};
  auto i = classify_triple(ab, ac, ba);
  ASSERT_TRUE(i);
  EXPECT_EQ(i->motif, MotifId(4, 2));
  EXPECT_EQ(i->node_at, (std::array<NodeId, 3>{0, 1, 2}));
  i = classify_triple(ab, ac, ab2);
  ASSERT_TRUE(i);
  EXPECT_EQ(i->motif, MotifId(4, 1));
  EXPECT_EQ(i->node_at, (std::array<NodeId, 3>{0, 1, 2}));
  i = classify_triple(ab, ba, ab2);
  ASSERT_TRUE(i);
  EXPECT_EQ(i->motif, MotifId(5, 1));
  EXPECT_EQ(i->positions, 2);
  // e2=(A,C), e3=(B,A), e4=(A,B): A first source, C its target, B third.
  i = classify_triple(ac, ba, ab2);
  ASSERT_TRUE(i);
  EXPECT_EQ(i->motif, MotifId(3, 3));
  EXPECT_EQ(i->node_at, (std::array<NodeId, 3>{0, 2, 1}));
}

TEST(Classify, FourNodesIsNothing) {
  const TemporalEdge ab{0, 1, 1, 0}, cd{2, 3, 2, 1}, ab2{0, 1, 3, 2};
  EXPECT_FALSE(classify_triple(ab, cd, ab2).has_value());
}

CountOptions opts(double delta, TiePolicy t = TiePolicy::kSeqOrder, unsigned threads = 1) {
  return {delta, t, threads};
}

TEST(Count, ToyGraphMatchesTable) {
  const auto g = toy_graph();
  const auto c = count_motifs(g, opts(10));
  const NodeId A = *g.find("A"), B = *g.find("B"), C = *g.find("C");
  const MotifId m33(3, 3), m41(4, 1), m42(4, 2), m51(5, 1);
  std::uint64_t instances = 0;
  for (auto t : c.motif_totals()) instances += t;
  EXPECT_EQ(instances, 4u);
  for (auto m : {m33, m41, m42, m51}) EXPECT_EQ(c.motif_totals()[m.index()], 1u);

  std::vector<std::uint64_t> a(kCellCount, 0), b(kCellCount, 0), cc(kCellCount, 0);
  for (auto m : {m33, m41, m42, m51}) a[cell_index(m, 1)] = 1;
  b[cell_index(m33, 3)] = 1;
  for (auto m : {m41, m42, m51}) b[cell_index(m, 2)] = 1;
  cc[cell_index(m33, 2)] = 1;
  cc[cell_index(m41, 3)] = 1;
  cc[cell_index(m42, 3)] = 1;
  EXPECT_TRUE(std::equal(a.begin(), a.end(), c.row(A).begin()));
  EXPECT_TRUE(std::equal(b.begin(), b.end(), c.row(B).begin()));
  EXPECT_TRUE(std::equal(cc.begin(), cc.end(), c.row(C).begin()));
  EXPECT_EQ(c.node_total(A), 4u);
  EXPECT_EQ(c.node_total(C), 3u);
}

TEST(Count, FewerThanThreeEdgesIsZero) {
  const auto c = count_motifs(parse("A,B,1\nB,A,2\n"), opts(100));
  for (NodeId v = 0; v < c.node_count(); ++v) EXPECT_EQ(c.node_total(v), 0u);
}

TEST(Count, NarrowWindowIsZero) {
  const auto c = count_motifs(toy_graph(), opts(0.5));
  for (NodeId v = 0; v < c.node_count(); ++v) EXPECT_EQ(c.node_total(v), 0u);
  EXPECT_EQ(c, brute_force_count(toy_graph(), opts(0.5)));
}

TEST(Count, WindowIsInclusive) {
  const auto g = parse("A,B,0\nB,A,1\nA,B,2\n");
  EXPECT_EQ(count_motifs(g, opts(2)).motif_totals()[MotifId(5, 1).index()], 1u);
  EXPECT_EQ(count_motifs(g, opts(1.999)).motif_totals()[MotifId(5, 1).index()], 0u);
}

TEST(Count, RejectsBadDelta) {
  EXPECT_THROW(count_motifs(toy_graph(), opts(0)), ValidationError);
  EXPECT_THROW(count_motifs(toy_graph(), opts(-1)), ValidationError);
  EXPECT_THROW(count_motifs(toy_graph(), opts(std::nan(""))), ValidationError);
  EXPECT_THROW(brute_force_count(toy_graph(), opts(0)), ValidationError);
}

TEST(Count, TiePolicies) {
  // Three edges at one instant: ordered by input under seq, skipped under exclude.
  const auto g = parse("A,B,1\nB,A,1\nA,B,1\n");
  EXPECT_EQ(count_motifs(g, opts(1)).motif_totals()[MotifId(5, 1).index()], 1u);
  const auto ex = count_motifs(g, opts(1, TiePolicy::kExcludeTies));
  for (auto t : ex.motif_totals()) EXPECT_EQ(t, 0u);
  // Tie between the last two edges only is also excluded.
  const auto g2 = parse("A,B,0\nB,A,1\nA,B,1\n");
  EXPECT_EQ(count_motifs(g2, opts(1, TiePolicy::kExcludeTies)).motif_totals()[MotifId(5, 1).index()], 0u);
}

TEST(Count, ThreadCountDoesNotMatter) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = test::random_graph(rng, 15, 200, 50);
    const auto one = count_motifs(g, opts(5));
    EXPECT_EQ(one, count_motifs(g, opts(5, TiePolicy::kSeqOrder, 4)));
    EXPECT_EQ(one, count_motifs(g, opts(5, TiePolicy::kSeqOrder, 64)));
  }
}

TEST(Count, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = test::random_graph(rng, 8, 30, 20);
    const double delta = 1 + static_cast<double>(rng() % 20);
    for (auto t : {TiePolicy::kSeqOrder, TiePolicy::kExcludeTies}) {
      EXPECT_EQ(count_motifs(g, opts(delta, t)), brute_force_count(g, opts(delta, t))) << trial;
    }
  }
}

TemporalGraph transform_times(const TemporalGraph& g, double scale, double shift) {
  std::vector<TemporalEdge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.time = e.time * scale + shift;
  return TemporalGraph(g.names(), std::move(edges));
}

PositionCountMatrix cells_only(const PositionCountMatrix& c) {
  std::vector<std::uint64_t> cells;
  for (NodeId v = 0; v < c.node_count(); ++v) cells.insert(cells.end(), c.row(v).begin(), c.row(v).end());
  return PositionCountMatrix(c.names(), std::nullopt, std::move(cells));
}

TEST(CountProperties, InvariantUnderTimeShiftAndScale) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = test::random_graph(rng, 10, 60, 40);
    const double delta = 1 + static_cast<double>(rng() % 15);
    for (auto t : {TiePolicy::kSeqOrder, TiePolicy::kExcludeTies}) {
      const auto base = cells_only(count_motifs(g, opts(delta, t)));
      // Power-of-two factors keep the arithmetic exact.
      EXPECT_EQ(base, cells_only(count_motifs(transform_times(g, 1, 1024), opts(delta, t))));
      EXPECT_EQ(base, cells_only(count_motifs(transform_times(g, 4, -512), opts(4 * delta, t))));
      EXPECT_EQ(base, cells_only(count_motifs(transform_times(g, 0.125, 3), opts(0.125 * delta, t))));
    }
  }
}

TEST(CountProperties, MonotoneInDelta) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = test::random_graph(rng, 10, 60, 40);
    PositionCountMatrix prev;
    for (double delta : {0.5, 1.0, 2.0, 3.5, 7.0, 20.0, 50.0}) {
      const auto c = count_motifs(g, opts(delta));
      if (prev.node_count() > 0) {
        for (NodeId v = 0; v < c.node_count(); ++v)
          for (std::size_t k = 0; k < kCellCount; ++k) ASSERT_LE(prev.at(v, k), c.at(v, k));
      }
      prev = c;
    }
  }
}

TEST(CountProperties, CellSumsMatchInstanceTotals) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = test::random_graph(rng, 10, 80, 30);
    const auto c = count_motifs(g, opts(6));
    for (std::size_t i = 0; i < kMotifCount; ++i) {
      const auto m = MotifId::from_index(i);
      for (int p = 1; p <= node_count(m); ++p) {
        std::uint64_t sum = 0;
        for (NodeId v = 0; v < c.node_count(); ++v) sum += c.at(v, cell_index(m, p));
        EXPECT_EQ(sum, c.motif_totals()[i]);
      }
    }
  }
}

TEST(CountProperties, ExcludingTiesNeverAdds) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = test::random_graph(rng, 10, 60, 10);
    const auto seq = count_motifs(g, opts(4));
    const auto ex = count_motifs(g, opts(4, TiePolicy::kExcludeTies));
    for (NodeId v = 0; v < seq.node_count(); ++v)
      for (std::size_t k = 0; k < kCellCount; ++k) EXPECT_LE(ex.at(v, k), seq.at(v, k));
  }
}

}  // namespace
}  // namespace tmpp
