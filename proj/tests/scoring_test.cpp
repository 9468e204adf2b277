#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "cuttana/scoring.hpp"
#include "cuttana/types.hpp"

using namespace cuttana;

TEST(BufferScore, MatchesDefinition) {
  EXPECT_DOUBLE_EQ(buffer_score(10, 5, 1000, 2.0), 1.01);
  EXPECT_DOUBLE_EQ(buffer_score(999, 0, 1000, 2.0), 0.999);
  EXPECT_DOUBLE_EQ(buffer_score(4, 4, 100, 10.0), 10.04);
}

TEST(BufferScore, OneMoreAssignedNeighborRaisesByThetaOverDegree) {
  EXPECT_NEAR(buffer_score(10, 1, 1000, 2.0) - buffer_score(10, 0, 1000, 2.0), 0.2, 1e-12);
}

TEST(FennelPenalty, PublishedDefaults) {
  const FennelPenalty p = FennelPenalty::for_instance(4, 100, 400);
  EXPECT_DOUBLE_EQ(p.alpha, 2.0 * 400 / 1000.0);
  EXPECT_DOUBLE_EQ(p.gamma, 1.5);
  EXPECT_NEAR(p(25.0), p.alpha * 1.5 * 5.0, 1e-12);
  EXPECT_DOUBLE_EQ(p(0.0), 0.0);
}

TEST(FennelPenalty, GeneralGamma) {
  const FennelPenalty p{0.5, 2.0};
  EXPECT_DOUBLE_EQ(p(3.0), 0.5 * 2.0 * 3.0);
}

TEST(Capacity, CeilingOfShare) {
  EXPECT_DOUBLE_EQ(capacity(10, 3, 0.0), 4.0);
  EXPECT_DOUBLE_EQ(capacity(12, 3, 0.5), 6.0);
  EXPECT_TRUE(fits(6.0, capacity(12, 3, 0.5)));
  EXPECT_FALSE(fits(6.01, capacity(12, 3, 0.5)));
  EXPECT_TRUE(fits(4.4, capacity(4, 1, 0.1)));
}

TEST(Capacity, ExactShareWhenItExceedsTheCeiling) {
  EXPECT_DOUBLE_EQ(capacity(1000, 3, 0.1), 1.1 * 1000 / 3);
  EXPECT_DOUBLE_EQ(capacity(20, 8, 0.1), 3.0);
  EXPECT_LE(capacity(1001, 8, 0.1), 1.1 * 126);
}

TEST(TieBreakingArgmax, UniqueMaximumNeverTouchesRng) {
  TieBreakingArgmax argmax;
  argmax.offer(0, 1.0);
  argmax.offer(1, 3.0);
  argmax.offer(2, 2.0);
  Rng rng(7);
  Rng untouched(7);
  EXPECT_EQ(argmax.pick(rng), 1u);
  EXPECT_EQ(rng(), untouched());
}

TEST(TieBreakingArgmax, TiesAreSeedDeterministicAndCoverCandidates) {
  std::set<std::uint32_t> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    TieBreakingArgmax argmax;
    for (std::uint32_t id = 0; id < 4; ++id) argmax.offer(id, 0.5);
    Rng a(seed);
    Rng b(seed);
    const auto first = argmax.pick(a);
    EXPECT_EQ(first, argmax.pick(b));
    seen.insert(first);
  }
  EXPECT_EQ(seen.size(), 4u);
}

TEST(TieBreakingArgmax, RelativeToleranceTies) {
  TieBreakingArgmax argmax;
  argmax.offer(0, 1e6);
  argmax.offer(1, 1e6 * (1 + 1e-14));
  argmax.offer(2, 1e6 - 1.0);
  EXPECT_FALSE(argmax.empty());
  std::set<std::uint32_t> seen;
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    Rng rng(seed);
    seen.insert(argmax.pick(rng));
  }
  EXPECT_EQ(seen, (std::set<std::uint32_t>{0, 1}));
}

TEST(Parse, NamesAndErrors) {
  EXPECT_EQ(parse_balance_mode("edge"), BalanceMode::edge);
  EXPECT_EQ(parse_algorithm("ldg"), Algorithm::ldg);
  EXPECT_EQ(to_string(Algorithm::fennel), "fennel");
  EXPECT_THROW(parse_balance_mode("both"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm("metis"), std::invalid_argument);
}
