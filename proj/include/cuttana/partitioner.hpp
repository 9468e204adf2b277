#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "cuttana/graph_io.hpp"
#include "cuttana/scoring.hpp"
#include "cuttana/subpartition_graph.hpp"
#include "cuttana/types.hpp"
#include "cuttana/vertex_buffer.hpp"

namespace cuttana {

struct PartitionerConfig {
  std::uint32_t k = 8;
  std::uint32_t subparts_per_partition = 4096;
  double epsilon = 0.10;
  BalanceMode balance = BalanceMode::edge;
  std::uint32_t d_max = 1000;
  std::uint64_t max_qsize = 1'000'000;
  double theta = 5.0;
  std::uint64_t seed = 1;
  std::uint64_t refine_threshold = 1;
  Algorithm algorithm = Algorithm::cuttana;
  bool refine = true;
  bool pipeline = false;
  std::uint32_t pipeline_shards = 0;  // 0: pick from hardware concurrency

  std::uint32_t total_subparts() const { return k * subparts_per_partition; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Assignment state of the streaming phase. Sub-partition s belongs to
/// partition s / subparts_per_partition while streaming.
struct PartitionState {
  PartitionState() = default;
  PartitionState(std::uint64_t vertex_count, std::uint32_t k, std::uint32_t subparts_per_partition,
                 BalanceMode balance);

  std::uint32_t k = 0;
  std::uint32_t subparts_per_partition = 1;
  BalanceMode balance = BalanceMode::edge;

  std::vector<PartId> part_of;
  std::vector<SubpartId> subpart_of;
  std::vector<std::uint64_t> vcount;
  std::vector<std::uint64_t> degsum;
  std::vector<std::uint64_t> sub_vcount;
  std::vector<std::uint64_t> sub_degsum;
  std::uint64_t assigned = 0;

  std::uint32_t total_subparts() const { return k * subparts_per_partition; }
  std::uint64_t vertex_count() const { return part_of.size(); }
  bool is_assigned(VertexId v) const { return part_of[v] != kUnassigned; }

  /// Load under the active balance measure.
  std::uint64_t load(PartId p) const { return balance == BalanceMode::vertex ? vcount[p] : degsum[p]; }
  std::uint64_t sub_load(SubpartId s) const {
    return balance == BalanceMode::vertex ? sub_vcount[s] : sub_degsum[s];
  }
  /// Weight a vertex of `degree` adds under the active measure.
  std::uint64_t weight_of(std::uint64_t degree) const { return balance == BalanceMode::vertex ? 1 : degree; }

  void assign(VertexId v, PartId p, std::uint32_t degree);
  void assign_subpart(VertexId v, SubpartId s, std::uint32_t degree);
};

/// Per-instance constants shared by the partition and sub-partition scorers.
struct ScoringContext {
  ScoringContext(const PartitionerConfig& cfg, const GraphHeader& header);

  Algorithm algorithm;
  BalanceMode balance;
  std::uint32_t k;
  std::uint32_t subparts_per_partition;
  double mu;                   // |V| / |E|, 1 when |E| = 0
  FennelPenalty penalty;       // partition level
  FennelPenalty sub_penalty;   // sub-partition level
  double part_capacity;        // active measure
  double sub_capacity;         // active measure
  std::uint64_t seed;
};

struct PartitionChoice {
  PartId part = 0;
  bool fallback = false;  // no partition had room; least-loaded was used
};

/// select_partition: argmax of the configured score over partitions that can
/// still take `v` under the active balance measure.
class PartitionSelector {
 public:
  explicit PartitionSelector(const ScoringContext& ctx);

  PartitionChoice select(std::span<const VertexId> neighbors, const PartitionState& state, Rng& rng);

  /// Score of partition p for a vertex with `neighbors_in_p` placed neighbors.
  double score(PartId p, std::uint32_t neighbors_in_p, const PartitionState& state) const;

 private:
  PartId least_loaded(const PartitionState& state) const;

  const ScoringContext* ctx_;
  std::vector<std::uint32_t> counts_;
  TieBreakingArgmax argmax_;
};

struct SubpartChoice {
  SubpartId subpart = 0;
  bool fallback = false;
};

/**
 * select_subpartition for the partitions it owns.
 *
 * Scores only the sub-partitions that hold an already-placed neighbor, plus
 * the lowest-penalty neighbor-free one (every other neighbor-free candidate is
 * dominated by it). Neighbor-free sub-partitions with equal load are ordered
 * by a seeded per-id rank. Each owned partition has its own tie-break RNG, so
 * sharding partitions across threads does not change any choice.
 */
class SubpartitionSelector {
 public:
  /// Owns partitions p with p % shard_count == shard.
  SubpartitionSelector(const ScoringContext& ctx, PartitionState& state, std::uint32_t shard = 0,
                       std::uint32_t shard_count = 1);

  /// `same_part_neighbors` are the placed neighbors of v inside `part`.
  SubpartChoice select_and_assign(VertexId v, std::uint32_t degree, PartId part,
                                  std::span<const VertexId> same_part_neighbors);

  double score(SubpartId s, std::uint32_t neighbors_in_s) const;
  std::uint64_t fallbacks() const { return fallbacks_; }

 private:
  using LoadKey = std::tuple<double, std::uint64_t, SubpartId>;
  LoadKey key_of(SubpartId s) const;
  double combined_load(SubpartId s) const;

  const ScoringContext* ctx_;
  PartitionState* state_;
  std::vector<std::set<LoadKey>> by_load_;  // per partition
  std::vector<Rng> rngs_;                   // per partition
  std::vector<std::uint32_t> counts_;       // scratch, size K'
  std::vector<SubpartId> touched_;
  TieBreakingArgmax argmax_;
  std::uint64_t fallbacks_ = 0;
};

struct StreamingStats {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::uint64_t immediate_high_degree = 0;  // degree >= d_max
  std::uint64_t immediate_informed = 0;     // all neighbors placed at read time
  std::uint64_t buffered = 0;
  std::uint64_t evicted_full = 0;           // left the buffer once fully informed
  std::uint64_t evicted_capacity = 0;       // popped because the buffer filled
  std::uint64_t drained = 0;                // popped after the stream ended
  std::size_t peak_buffer = 0;
  std::uint64_t peak_buffer_slots = 0;
  std::uint32_t max_buffered_degree = 0;
  std::uint64_t fallback_assignments = 0;
  std::uint64_t sub_fallback_assignments = 0;
  std::uint64_t cut_edges = 0;               // edge-cut of the streamed assignment
  bool balance_violation = false;            // final loads exceed capacity
  double stream_ms = 0.0;
  double drain_ms = 0.0;
};

struct StreamingResult {
  PartitionState state;
  SubpartEdgeWeights weights;
  StreamingStats stats;
};

struct StreamingHooks {
  /// Called after every buffer admission and removal; tests use it to audit
  /// occupancy and score freshness against the live assignment.
  std::function<void(const VertexBuffer&, const PartitionState&)> on_buffer_change;
};

/// Phase 1: prioritized buffered streaming with sub-partitioning and edge
/// weight accumulation.
StreamingResult run_streaming_phase(GraphStream& stream, const PartitionerConfig& cfg,
                                    StreamingHooks hooks = {});

/// Pure one-pass streaming with the Fennel or LDG score; no buffer and one
/// sub-partition per partition.
StreamingResult run_baseline(GraphStream& stream, const PartitionerConfig& cfg);

}  // namespace cuttana
