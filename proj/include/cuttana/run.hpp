#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include <json.hpp>

#include "cuttana/graph_io.hpp"
#include "cuttana/partitioner.hpp"
#include "cuttana/refinement.hpp"

namespace cuttana {

struct RunOptions {
  StreamingHooks hooks;
  std::function<void(const TradeRecord&, const Refiner&)> on_trade;
};

struct RunReport {
  GraphHeader header;
  PartitionState state;
  StreamingStats stream;
  std::optional<RefineSummary> refine;  // empty when refinement did not run
  std::uint64_t pre_refine_cut = 0;
  std::uint64_t post_refine_cut = 0;
  double pre_refine_lambda_ec = 0.0;
  double post_refine_lambda_ec = 0.0;
  bool balance_violation = false;
  double build_ms = 0.0;
  double total_ms = 0.0;
};

/// Phase 1 with the configured algorithm, then Phase 2 when the algorithm is
/// cuttana and refinement is enabled.
RunReport run_partitioner(GraphStream& stream, const PartitionerConfig& cfg, const RunOptions& options = {});

nlohmann::json to_json(const PartitionerConfig& cfg);
nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const TradeRecord& trade);

}  // namespace cuttana
