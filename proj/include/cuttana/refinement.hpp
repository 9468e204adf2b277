#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cuttana/move_score.hpp"
#include "cuttana/partitioner.hpp"
#include "cuttana/subpartition_graph.hpp"
#include "cuttana/types.hpp"

namespace cuttana {

struct TradeRecord {
  std::uint64_t step = 0;
  SubpartId subpart = 0;
  PartId src = 0;
  PartId dst = 0;
  std::int64_t dec = 0;
  std::uint64_t edge_cut = 0;    // after the trade
  std::uint64_t ms_updates = 0;  // move-score entries touched by the trade
};

struct RefineSummary {
  std::uint64_t initial_edge_cut = 0;
  std::uint64_t final_edge_cut = 0;
  std::uint64_t trades = 0;
  std::uint64_t max_ms_updates = 0;
  double build_ms = 0.0;
  double refine_ms = 0.0;
};

/**
 * Phase 2 over the sub-partition graph.
 *
 * Holds the owner map P', per-sub-partition sizes (active balance measure),
 * the ECP table and the move-score sets. After every trade all three are
 * updated incrementally: only neighbors of the moved sub-partition touch the
 * ECP table, and move-score updates stay O(K') per trade.
 */
class Refiner {
 public:
  /// Generic build: `owner[s]` is the partition of sub-partition s and
  /// `sizes[s]` its load under the balance measure that `capacity` refers to.
  Refiner(std::uint32_t k, std::vector<PartId> owner, std::vector<std::uint64_t> sizes,
          const SubpartEdgeWeights& weights, double capacity, std::uint64_t threshold = 1);

  /// Build from a completed streaming state.
  static Refiner from_state(const PartitionState& state, const SubpartEdgeWeights& weights, double capacity,
                            std::uint64_t threshold = 1);

  std::uint32_t k() const { return k_; }
  std::uint32_t subpart_count() const { return static_cast<std::uint32_t>(owner_.size()); }
  PartId owner(SubpartId s) const { return owner_[s]; }
  const std::vector<PartId>& owners() const { return owner_; }
  const std::vector<std::uint64_t>& sizes() const { return sizes_; }
  std::uint64_t load(PartId p) const { return loads_[p]; }
  double capacity() const { return capacity_; }
  std::uint64_t threshold() const { return threshold_; }
  const SubpartAdjacency& adjacency() const { return adjacency_; }

  /// Edge-cut maintained across trades (sum of owner-crossing W).
  std::uint64_t edge_cut() const { return edge_cut_; }

  std::int64_t ecp(SubpartId s, PartId d) const { return ecp_[index(s, d)]; }

  /// ecp(s, owner(s)) - ecp(s, dst). Throws std::invalid_argument when dst == owner(s).
  std::int64_t dec(SubpartId s, PartId dst) const;

  /// DEC as stored in MS(owner(s), dst).
  std::int64_t stored_dec(SubpartId s, PartId dst) const;
  std::size_t move_score_set_size(PartId src) const { return scores_[src].size(); }

  /// Best feasible move with DEC >= threshold, or nullopt when the state is
  /// maximal under the threshold.
  std::optional<MoveCandidate> find_best_trade() const;

  /// Applies a move returned by find_best_trade().
  TradeRecord apply_trade(const MoveCandidate& move);

  /// Trades until find_best_trade() comes back empty.
  RefineSummary refine(const std::function<void(const TradeRecord&, const Refiner&)>& on_trade = {});

  /// Writes part_of = owner(subpart_of) and the per-partition counters back.
  void write_back(PartitionState& state) const;

  /// Upper bound on move-score updates per trade: 4 K' + 2 K.
  std::uint64_t update_bound() const { return 4ULL * subpart_count() + 2ULL * k_; }

  /// When every non-empty sub-partition has the same size, checks that no
  /// partition holds more of them than its capacity admits. Returns true when
  /// sizes are unequal (the capacity check on actual sizes is then the rule).
  bool equal_size_count_bound_holds() const;

 private:
  std::size_t index(SubpartId s, PartId d) const { return static_cast<std::size_t>(s) * k_ + d; }
  std::optional<std::uint64_t> room(PartId dst) const;
  void insert_scores(SubpartId s);

  std::uint32_t k_;
  std::vector<PartId> owner_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> loads_;
  double capacity_;
  std::uint64_t threshold_;
  SubpartAdjacency adjacency_;
  std::vector<std::int64_t> ecp_;
  std::vector<SourceMoveScores> scores_;
  std::vector<std::uint32_t> slot_of_;
  std::uint64_t edge_cut_ = 0;
  std::uint64_t steps_ = 0;
  std::vector<std::int64_t> scratch_decs_;
};

}  // namespace cuttana
