#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <tuple>
#include <vector>

#include "cuttana/graph_io.hpp"
#include "cuttana/types.hpp"

namespace cuttana {

/// Recursive-matrix generator settings. Defaults are the Graph500 quadrants.
struct RmatParams {
  std::uint32_t scale = 10;
  std::uint32_t edge_factor = 8;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on scale outside 1..31 or quadrants not summing to 1.
  void validate() const;
};

/// Samples edge_factor * 2^scale directed pairs, relabels vertices by a seeded
/// permutation, then symmetrizes, deduplicates and drops self-loops. |V| is
/// always 2^scale; vertices that drew no edge stay isolated.
AdjacencyGraph gen_rmat(const RmatParams& params);
GraphHeader gen_rmat(const RmatParams& params, const std::filesystem::path& out);

struct BestPartition {
  double lambda_ec = 0.0;
  std::uint64_t cut_edges = 0;
  std::vector<PartId> witness;  // 0-based
};

/// Exhaustive minimum edge-cut over all balanced assignments. Throws
/// std::invalid_argument when k^|V| exceeds 65536; returns nullopt when no
/// assignment satisfies the balance constraint.
std::optional<BestPartition> oracle_best_partition(const AdjacencyGraph& graph, std::uint32_t k, double epsilon,
                                                   BalanceMode mode);

struct OracleTrade {
  std::uint32_t subpart = 0;
  std::uint32_t dst = 0;
  std::int64_t gain = 0;

  bool operator==(const OracleTrade&) const = default;
};

/// Every capacity-respecting single sub-partition move that strictly lowers the
/// cut, found by recomputing the cut from `weights` (a, b, W) for each
/// candidate. Sorted by (gain desc, subpart, dst). Needs at most 64
/// sub-partitions.
std::vector<OracleTrade> oracle_enumerate_trades(
    std::uint32_t k, const std::vector<std::uint32_t>& owner, const std::vector<std::uint64_t>& sizes,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>& weights, double capacity);

}  // namespace cuttana
