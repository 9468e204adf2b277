#include <gtest/gtest.h>

#include <algorithm>

#include "cuttana/workbench.hpp"
#include "test_support.hpp"

using namespace cuttana;
using cuttana::testing::TempDir;

TEST(Rmat, ShapeAndDeterminism) {
  RmatParams p;
  p.scale = 8;
  p.edge_factor = 6;
  p.seed = 17;
  const AdjacencyGraph a = gen_rmat(p);
  const AdjacencyGraph b = gen_rmat(p);
  EXPECT_EQ(a.vertex_count(), 256u);
  EXPECT_EQ(a.adjacency, b.adjacency);
  EXPECT_LE(a.edge_count(), 256u * 6);
  EXPECT_GT(a.edge_count(), 256u * 3);
  p.seed = 18;
  EXPECT_NE(gen_rmat(p).adjacency, a.adjacency);
}

TEST(Rmat, OutputIsSimpleSymmetricAndSkewed) {
  RmatParams p;
  p.scale = 12;
  p.edge_factor = 8;
  TempDir dir;
  const GraphHeader header = gen_rmat(p, dir / "r.txt");
  const ValidationReport report = validate(dir / "r.txt");
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.header, header);
  const std::uint64_t max_degree = report.degree_histogram.rbegin()->first;
  const double avg = 2.0 * static_cast<double>(header.edge_count) / static_cast<double>(header.vertex_count);
  EXPECT_GT(static_cast<double>(max_degree), 10 * avg);
}

TEST(Rmat, UniformQuadrantsAreNotSkewed) {
  RmatParams p;
  p.scale = 12;
  p.a = p.b = p.c = p.d = 0.25;
  const AdjacencyGraph g = gen_rmat(p);
  std::size_t max_degree = 0;
  for (const auto& nbrs : g.adjacency) max_degree = std::max(max_degree, nbrs.size());
  EXPECT_LT(max_degree, 40u);
}

TEST(Rmat, RejectsBadParameters) {
  RmatParams p;
  p.scale = 0;
  EXPECT_THROW(gen_rmat(p), std::invalid_argument);
  p = {};
  p.a = 0.9;
  EXPECT_THROW(gen_rmat(p), std::invalid_argument);
  p = {};
  p.d = -0.05;
  p.a = 0.67;
  EXPECT_THROW(gen_rmat(p), std::invalid_argument);
}

TEST(OracleBestPartition, SmallExamples) {
  const AdjacencyGraph triangles = build_simple_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const auto t = oracle_best_partition(triangles, 2, 0.0, BalanceMode::vertex);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->cut_edges, 0u);
  EXPECT_EQ(t->witness[0], t->witness[2]);
  EXPECT_NE(t->witness[0], t->witness[3]);

  const AdjacencyGraph k4 = build_simple_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto c = oracle_best_partition(k4, 2, 0.0, BalanceMode::vertex);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->cut_edges, 4u);
  EXPECT_DOUBLE_EQ(c->lambda_ec, 4.0 / 6.0);

  const AdjacencyGraph path = build_simple_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(oracle_best_partition(path, 2, 0.0, BalanceMode::vertex)->cut_edges, 1u);
  EXPECT_EQ(oracle_best_partition(path, 1, 0.0, BalanceMode::edge)->cut_edges, 0u);
}

TEST(OracleBestPartition, InfeasibleAndOversized) {
  const AdjacencyGraph star = build_simple_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_FALSE(oracle_best_partition(star, 3, 0.0, BalanceMode::edge).has_value());
  const AdjacencyGraph big = build_simple_graph(17, {});
  EXPECT_THROW(oracle_best_partition(big, 2, 0.0, BalanceMode::vertex), std::invalid_argument);
}

TEST(OracleTrades, ListsImprovingFeasibleMoves) {
  // S0 in P0 tied to S1 and S2 in P1.
  const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> w{{0, 1, 3}, {0, 2, 1}};
  const auto trades = oracle_enumerate_trades(2, {0, 1, 1}, {1, 1, 1}, w, 3.0);
  EXPECT_EQ(trades, (std::vector<OracleTrade>{{0, 1, 4}, {1, 0, 3}, {2, 0, 1}}));
  EXPECT_EQ(oracle_enumerate_trades(2, {0, 1, 1}, {1, 1, 1}, w, 2.0),
            (std::vector<OracleTrade>{{1, 0, 3}, {2, 0, 1}}));
}
