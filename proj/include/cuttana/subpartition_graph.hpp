#pragma once

#include <cstdint>
#include <span>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cuttana/types.hpp"

namespace cuttana {

/// Sparse symmetric edge weights W(S_i, S_j) between distinct sub-partitions,
/// keyed by unordered pair. Internal edges (S_i == S_j) are never stored.
class SubpartEdgeWeights {
 public:
  void add(SubpartId a, SubpartId b, std::uint64_t weight = 1);
  std::uint64_t weight(SubpartId a, SubpartId b) const;
  std::size_t pair_count() const { return weights_.size(); }
  std::uint64_t total_weight() const;

  /// (a, b, W) with a < b, sorted.
  std::vector<std::tuple<SubpartId, SubpartId, std::uint64_t>> sorted_pairs() const;

  bool operator==(const SubpartEdgeWeights& other) const { return weights_ == other.weights_; }

 private:
  static std::uint64_t key(SubpartId a, SubpartId b);
  std::unordered_map<std::uint64_t, std::uint64_t> weights_;
};

/**
 * Builds W from a stream of assignment events. An edge is counted exactly once,
 * when its second endpoint becomes known to the accumulator, so the result is
 * independent of the order in which events arrive.
 */
class WeightAccumulator {
 public:
  explicit WeightAccumulator(std::uint64_t vertex_count);

  void on_assigned(VertexId v, SubpartId sp, std::span<const VertexId> neighbors);

  SubpartEdgeWeights& weights() { return weights_; }
  SubpartEdgeWeights take() { return std::move(weights_); }

 private:
  std::vector<SubpartId> subpart_of_;
  SubpartEdgeWeights weights_;
};

/// Adjacency view of W: for every sub-partition, its (neighbor, weight) list.
struct SubpartAdjacency {
  std::vector<std::uint64_t> offsets;  // size K' + 1
  std::vector<SubpartId> targets;
  std::vector<std::uint64_t> weights;

  static SubpartAdjacency from(const SubpartEdgeWeights& w, std::uint32_t subpart_count);

  std::size_t degree(SubpartId s) const { return offsets[s + 1] - offsets[s]; }
};

}  // namespace cuttana
