#include <gtest/gtest.h>

#include <random>

#include "cuttana/refinement.hpp"
#include "cuttana/workbench.hpp"
#include "test_support.hpp"

using namespace cuttana;
using cuttana::testing::WeightList;
using cuttana::testing::cut_from_scratch;
using cuttana::testing::ecp_from_scratch;

namespace {

SubpartEdgeWeights to_weights(const WeightList& list) {
  SubpartEdgeWeights w;
  for (const auto& [a, b, x] : list) w.add(a, b, x);
  return w;
}

struct Instance {
  std::uint32_t k;
  std::vector<PartId> owner;
  std::vector<std::uint64_t> sizes;
  WeightList weights;
  double capacity;
};

Instance random_instance(std::uint64_t seed, std::uint32_t k, std::uint32_t n, std::uint32_t pairs, bool equal_sizes) {
  std::mt19937_64 rng(seed);
  Instance inst{k, std::vector<PartId>(n), std::vector<std::uint64_t>(n), {}, 0.0};
  std::uint64_t total = 0;
  for (SubpartId s = 0; s < n; ++s) {
    inst.owner[s] = s % k;
    inst.sizes[s] = equal_sizes ? 3 : 1 + rng() % 6;
    total += inst.sizes[s];
  }
  SubpartEdgeWeights w;
  for (std::uint32_t i = 0; i < pairs; ++i) {
    const auto a = static_cast<SubpartId>(rng() % n);
    const auto b = static_cast<SubpartId>(rng() % n);
    if (a != b) w.add(a, b, 1 + rng() % 5);
  }
  for (const auto& t : w.sorted_pairs()) inst.weights.push_back(t);
  std::vector<std::uint64_t> loads(k, 0);
  for (SubpartId s = 0; s < n; ++s) loads[inst.owner[s]] += inst.sizes[s];
  const double share = static_cast<double>(*std::max_element(loads.begin(), loads.end()));
  inst.capacity = std::max(share, capacity(total, k, 0.2));
  return inst;
}

void expect_tables_match(const Refiner& r, const WeightList& weights) {
  const auto ecp = ecp_from_scratch(r.k(), r.owners(), weights);
  for (SubpartId s = 0; s < r.subpart_count(); ++s) {
    for (PartId d = 0; d < r.k(); ++d) {
      ASSERT_EQ(r.ecp(s, d), ecp[s * r.k() + d]) << "s=" << s << " d=" << d;
      if (d == r.owner(s)) continue;
      ASSERT_EQ(r.dec(s, d), ecp[s * r.k() + r.owner(s)] - ecp[s * r.k() + d]);
      ASSERT_EQ(r.stored_dec(s, d), r.dec(s, d));
    }
  }
  ASSERT_EQ(r.edge_cut(), cut_from_scratch(r.owners(), weights));
}

}  // namespace

TEST(Refiner, PairOfSubpartitionsJoins) {
  // S0 (in P0) and S1 (in P1) share weight 5; S2 sits alone in P1.
  const WeightList weights{{0, 1, 5}};
  Refiner r(2, {0, 1, 1}, {1, 1, 1}, to_weights(weights), 3.0);
  EXPECT_EQ(r.edge_cut(), 5u);
  EXPECT_EQ(r.ecp(0, 0), 5);
  EXPECT_EQ(r.ecp(0, 1), 0);
  EXPECT_EQ(r.dec(0, 1), 5);
  const auto best = r.find_best_trade();
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(*best, (MoveCandidate{5, 0, 1}));
  const TradeRecord t = r.apply_trade(*best);
  EXPECT_EQ(t.src, 0u);
  EXPECT_EQ(t.edge_cut, 0u);
  EXPECT_FALSE(r.find_best_trade().has_value());
}

TEST(Refiner, CapacityBlocksMove) {
  const WeightList weights{{0, 1, 5}};
  Refiner r(2, {0, 1, 1}, {1, 1, 1}, to_weights(weights), 2.0);
  const auto best = r.find_best_trade();
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(*best, (MoveCandidate{5, 1, 0}));
}

TEST(Refiner, ThresholdStopsSmallGains) {
  const WeightList weights{{0, 1, 2}};
  Refiner r(2, {0, 1}, {1, 1}, to_weights(weights), 2.0, 3);
  EXPECT_FALSE(r.find_best_trade().has_value());
  EXPECT_EQ(r.refine().trades, 0u);
}

TEST(Refiner, DecRejectsOwnPartition) {
  Refiner r(2, {0, 1}, {1, 1}, SubpartEdgeWeights{}, 2.0);
  EXPECT_THROW(r.dec(0, 0), std::invalid_argument);
  EXPECT_THROW(Refiner(0, {}, {}, SubpartEdgeWeights{}, 1.0), std::invalid_argument);
  EXPECT_THROW(Refiner(2, {0}, {1}, SubpartEdgeWeights{}, 1.0, 0), std::invalid_argument);
}

TEST(Refiner, IncrementalTablesMatchRecomputation) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance inst = random_instance(seed, 2 + seed % 4, 30, 120, false);
    Refiner r(inst.k, inst.owner, inst.sizes, to_weights(inst.weights), inst.capacity);
    expect_tables_match(r, inst.weights);
    std::uint64_t prev = r.edge_cut();
    r.refine([&](const TradeRecord& t, const Refiner& live) {
      ASSERT_LT(t.edge_cut, prev);
      prev = t.edge_cut;
      ASSERT_LE(t.ms_updates, live.update_bound());
      for (PartId p = 0; p < live.k(); ++p) ASSERT_TRUE(fits(static_cast<double>(live.load(p)), inst.capacity));
      expect_tables_match(live, inst.weights);
    });
  }
}

TEST(Refiner, GreedyChoiceMatchesOracleEnumeration) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Instance inst = random_instance(seed, 3, 24, 80, false);
    Refiner r(inst.k, inst.owner, inst.sizes, to_weights(inst.weights), inst.capacity);
    for (int step = 0; step < 200; ++step) {
      const auto oracle = oracle_enumerate_trades(inst.k, r.owners(), r.sizes(), inst.weights, inst.capacity);
      const auto best = r.find_best_trade();
      if (oracle.empty()) {
        ASSERT_FALSE(best.has_value());
        break;
      }
      ASSERT_TRUE(best.has_value());
      ASSERT_EQ(best->dec, oracle.front().gain);
      ASSERT_EQ(best->subpart, oracle.front().subpart);
      ASSERT_EQ(best->dst, oracle.front().dst);
      r.apply_trade(*best);
    }
    EXPECT_TRUE(oracle_enumerate_trades(inst.k, r.owners(), r.sizes(), inst.weights, inst.capacity).empty());
  }
}

TEST(Refiner, TradeCountBoundedByCutOverThreshold) {
  for (std::uint64_t thresh : {1u, 2u, 4u}) {
    const Instance inst = random_instance(7 + thresh, 4, 40, 200, false);
    Refiner r(inst.k, inst.owner, inst.sizes, to_weights(inst.weights), inst.capacity, thresh);
    const RefineSummary s = r.refine();
    EXPECT_LE(s.trades, s.initial_edge_cut / thresh);
    EXPECT_EQ(s.initial_edge_cut - s.final_edge_cut >= s.trades * thresh, true);
    EXPECT_FALSE(r.find_best_trade().has_value());
  }
}

TEST(Refiner, EqualSizesKeepCountBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = random_instance(seed, 3, 18, 60, true);
    inst.capacity = 3.0 * 7;  // seven size-3 sub-partitions per partition
    Refiner r(inst.k, inst.owner, inst.sizes, to_weights(inst.weights), inst.capacity);
    r.refine([](const TradeRecord&, const Refiner& live) { ASSERT_TRUE(live.equal_size_count_bound_holds()); });
    std::vector<int> count(3, 0);
    for (PartId o : r.owners()) ++count[o];
    for (int c : count) EXPECT_LE(c, 7);
  }
}

TEST(Refiner, WriteBackRelabelsVertices) {
  PartitionState state(4, 2, 2, BalanceMode::vertex);
  const std::vector<SubpartId> sub{0, 1, 2, 3};
  for (VertexId v = 0; v < 4; ++v) {
    state.assign(v, sub[v] / 2, 1);
    state.assign_subpart(v, sub[v], 1);
  }
  SubpartEdgeWeights w;
  w.add(1, 2, 1);
  w.add(0, 3, 1);
  Refiner r = Refiner::from_state(state, w, 3.0);
  EXPECT_EQ(r.edge_cut(), 2u);
  r.refine();
  EXPECT_EQ(r.edge_cut(), 0u);
  r.write_back(state);
  for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(state.part_of[v], r.owner(state.subpart_of[v]));
  EXPECT_EQ(state.part_of[1], state.part_of[2]);
  EXPECT_EQ(state.part_of[0], state.part_of[3]);
  EXPECT_EQ(state.vcount[0] + state.vcount[1], 4u);
}
