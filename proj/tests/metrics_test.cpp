#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cuttana/metrics.hpp"
#include "test_support.hpp"

using namespace cuttana;
using cuttana::testing::TempDir;
using cuttana::testing::naive_cut;
using cuttana::testing::naive_volume;
using cuttana::testing::random_graph;

namespace {

QualityReport eval(const AdjacencyGraph& g, const std::vector<PartId>& part, std::uint32_t k,
                   std::optional<double> eps = std::nullopt) {
  GraphStream s = stream_from_string(to_adjacency_text(g));
  return evaluate(s, part, k, eps);
}

}  // namespace

TEST(Metrics, FourCycleAlternating) {
  const AdjacencyGraph g = build_simple_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const QualityReport r = eval(g, {0, 1, 0, 1}, 2);
  EXPECT_EQ(r.cut_edges, 4u);
  EXPECT_DOUBLE_EQ(r.lambda_ec, 1.0);
  EXPECT_EQ(r.communication_volume, 4u);
  EXPECT_DOUBLE_EQ(r.lambda_cv, 0.5);
  EXPECT_DOUBLE_EQ(r.vertex_imbalance, 1.0);
  EXPECT_DOUBLE_EQ(r.edge_imbalance, 1.0);
}

TEST(Metrics, TwoTrianglesSplitCleanly) {
  const AdjacencyGraph g = build_simple_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const QualityReport r = eval(g, {0, 0, 0, 1, 1, 1}, 2);
  EXPECT_EQ(r.cut_edges, 0u);
  EXPECT_DOUBLE_EQ(r.lambda_cv, 0.0);
}

TEST(Metrics, ImbalanceOfSkewedMap) {
  const AdjacencyGraph g = build_simple_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const QualityReport r = eval(g, {0, 0, 0, 1}, 2, 0.1);
  EXPECT_DOUBLE_EQ(r.vertex_imbalance, 1.5);
  EXPECT_DOUBLE_EQ(r.edge_imbalance, 5.0 * 2 / 6.0);
  EXPECT_THAT(r.vcount, ::testing::ElementsAre(3, 1));
  EXPECT_THAT(r.degsum, ::testing::ElementsAre(5, 1));
  ASSERT_TRUE(r.epsilon_check.has_value());
  EXPECT_DOUBLE_EQ(r.epsilon_check->vertex_capacity, 2.2);
  EXPECT_FALSE(r.epsilon_check->vertex_balanced);
  EXPECT_FALSE(r.epsilon_check->edge_balanced);
}

TEST(Metrics, MatchesNaiveDefinitions) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::uint32_t n = 20 + static_cast<std::uint32_t>(seed) * 3;
    const AdjacencyGraph g = random_graph(n, n * 3, seed);
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(seed % 6);
    std::vector<PartId> part(n);
    for (auto& p : part) p = static_cast<PartId>(rng() % k);
    const QualityReport r = eval(g, part, k);
    EXPECT_EQ(r.cut_edges, naive_cut(g, part));
    EXPECT_EQ(r.communication_volume, naive_volume(g, part));
    GraphStream s1 = stream_from_string(to_adjacency_text(g));
    EXPECT_DOUBLE_EQ(edge_cut(s1, part), static_cast<double>(naive_cut(g, part)) / g.edge_count());
    GraphStream s2 = stream_from_string(to_adjacency_text(g));
    EXPECT_DOUBLE_EQ(communication_volume(s2, part, k), static_cast<double>(naive_volume(g, part)) / (k * n));
  }
}

TEST(Metrics, RejectsBadMaps) {
  const AdjacencyGraph g = build_simple_graph(3, {{0, 1}});
  try {
    eval(g, {0, 1}, 2);
    FAIL() << "short map accepted";
  } catch (const MapError& e) {
    EXPECT_THAT(e.what(), ::testing::HasSubstr("map covers 2 of 3 vertices"));
  }
  EXPECT_THROW(eval(g, {0, 1, 2}, 2), MapError);
  EXPECT_THROW(eval(g, {0, 1, kUnassigned}, 2), MapError);
}

TEST(Metrics, EdgelessGraphHasZeroCut) {
  const QualityReport r = eval(build_simple_graph(3, {}), {0, 1, 2}, 3);
  EXPECT_DOUBLE_EQ(r.lambda_ec, 0.0);
  EXPECT_DOUBLE_EQ(r.edge_imbalance, 1.0);
}

TEST(PartMap, RoundTripIsOneBased) {
  std::ostringstream out;
  write_part_map({0, 2, 1}, out);
  EXPECT_EQ(out.str(), "1\n3\n2\n");
  std::istringstream in(out.str());
  EXPECT_THAT(read_part_map(in), ::testing::ElementsAre(0, 2, 1));
  TempDir dir;
  write_part_map({4, 0}, dir / "m.parts");
  EXPECT_THAT(read_part_map(dir / "m.parts"), ::testing::ElementsAre(4, 0));
}

TEST(PartMap, RejectsZeroAndGarbage) {
  std::istringstream zero("1\n0\n");
  EXPECT_THROW(read_part_map(zero), MapError);
  std::istringstream junk("1\nx\n");
  EXPECT_THROW(read_part_map(junk), MapError);
  EXPECT_THROW(read_part_map(std::filesystem::path("/nonexistent/map")), MapError);
}

TEST(QualityJson, EpsilonCheckNullWhenAbsent) {
  const AdjacencyGraph g = build_simple_graph(2, {{0, 1}});
  const auto plain = to_json(eval(g, {0, 1}, 2));
  EXPECT_TRUE(plain["epsilon_check"].is_null());
  EXPECT_EQ(plain["cut_edges"], 1);
  const auto checked = to_json(eval(g, {0, 1}, 2, 0.0));
  EXPECT_TRUE(checked["epsilon_check"]["vertex_balanced"].get<bool>());
}
