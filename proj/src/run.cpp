#include "cuttana/run.hpp"

#include <chrono>

namespace cuttana {

namespace {

double ms_since(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

double cut_ratio(std::uint64_t cut, std::uint64_t edges) {
  return edges == 0 ? 0.0 : static_cast<double>(cut) / static_cast<double>(edges);
}

}  // namespace

RunReport run_partitioner(GraphStream& stream, const PartitionerConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.header = stream.header();

  StreamingResult phase1 = cfg.algorithm == Algorithm::cuttana ? run_streaming_phase(stream, cfg, options.hooks)
                                                                : run_baseline(stream, cfg);
  report.stream = phase1.stats;
  report.pre_refine_cut = phase1.stats.cut_edges;
  report.post_refine_cut = phase1.stats.cut_edges;

  if (cfg.algorithm == Algorithm::cuttana && cfg.refine) {
    const ScoringContext ctx(cfg, report.header);
    const auto build_start = std::chrono::steady_clock::now();
    Refiner refiner = Refiner::from_state(phase1.state, phase1.weights, ctx.part_capacity, cfg.refine_threshold);
    report.build_ms = ms_since(build_start);
    if (refiner.edge_cut() != phase1.stats.cut_edges) {
      throw InvariantError("sub-partition graph cut " + std::to_string(refiner.edge_cut()) +
                           " differs from streamed cut " + std::to_string(phase1.stats.cut_edges));
    }
    RefineSummary summary = refiner.refine(options.on_trade);
    summary.build_ms = report.build_ms;
    refiner.write_back(phase1.state);
    report.post_refine_cut = summary.final_edge_cut;
    report.refine = summary;
  }

  report.state = std::move(phase1.state);
  const ScoringContext ctx(cfg, report.header);
  for (PartId p = 0; p < report.state.k; ++p) {
    if (!fits(static_cast<double>(report.state.load(p)), ctx.part_capacity)) report.balance_violation = true;
  }
  report.pre_refine_lambda_ec = cut_ratio(report.pre_refine_cut, report.header.edge_count);
  report.post_refine_lambda_ec = cut_ratio(report.post_refine_cut, report.header.edge_count);
  report.total_ms = ms_since(start);
  return report;
}

nlohmann::json to_json(const PartitionerConfig& cfg) {
  return {
      {"k", cfg.k},
      {"subparts_per_partition", cfg.subparts_per_partition},
      {"epsilon", cfg.epsilon},
      {"balance", std::string(to_string(cfg.balance))},
      {"d_max", cfg.d_max},
      {"max_qsize", cfg.max_qsize},
      {"theta", cfg.theta},
      {"seed", cfg.seed},
      {"refine_threshold", cfg.refine_threshold},
      {"algorithm", std::string(to_string(cfg.algorithm))},
      {"refine", cfg.refine},
      {"pipeline", cfg.pipeline},
      {"pipeline_shards", cfg.pipeline_shards},
  };
}

nlohmann::json to_json(const RunReport& report) {
  const StreamingStats& s = report.stream;
  nlohmann::json out;
  out["graph"] = {{"vertices", report.header.vertex_count}, {"edges", report.header.edge_count}};
  out["timings_ms"] = {
      {"stream", s.stream_ms},
      {"drain", s.drain_ms},
      {"build", report.build_ms},
      {"refine", report.refine ? report.refine->refine_ms : 0.0},
      {"total", report.total_ms},
  };
  out["buffer"] = {
      {"peak_occupancy", s.peak_buffer},
      {"peak_neighbor_slots", s.peak_buffer_slots},
      {"max_buffered_degree", s.max_buffered_degree},
      {"buffered", s.buffered},
      {"evicted_full", s.evicted_full},
      {"evicted_capacity", s.evicted_capacity},
      {"drained", s.drained},
      {"immediate_high_degree", s.immediate_high_degree},
      {"immediate_informed", s.immediate_informed},
  };
  out["refinement"] = {
      {"ran", report.refine.has_value()},
      {"trades", report.refine ? report.refine->trades : 0},
      {"max_ms_updates", report.refine ? report.refine->max_ms_updates : 0},
  };
  out["edge_cut"] = {
      {"pre_refine", report.pre_refine_cut},
      {"post_refine", report.post_refine_cut},
      {"pre_refine_lambda_ec", report.pre_refine_lambda_ec},
      {"post_refine_lambda_ec", report.post_refine_lambda_ec},
  };
  out["violations"] = {
      {"balance", report.balance_violation},
      {"fallback_assignments", s.fallback_assignments},
      {"sub_fallback_assignments", s.sub_fallback_assignments},
  };
  out["vcount"] = report.state.vcount;
  out["degsum"] = report.state.degsum;
  return out;
}

nlohmann::json to_json(const TradeRecord& trade) {
  return {
      {"step", trade.step},
      {"subpart", trade.subpart + 1},
      {"src", trade.src + 1},
      {"dst", trade.dst + 1},
      {"dec", trade.dec},
      {"edge_cut", trade.edge_cut},
  };
}

}  // namespace cuttana
