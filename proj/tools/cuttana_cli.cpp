#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cuttana/graph_io.hpp"
#include "cuttana/metrics.hpp"
#include "cuttana/run.hpp"
#include "cuttana/workbench.hpp"

namespace fs = std::filesystem;
using namespace cuttana;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

struct PartitionArgs {
  std::string input;
  std::string out_dir = ".";
  std::string balance = "edge";
  std::string algo = "cuttana";
  std::optional<double> epsilon;
  std::string trade_log;
  bool no_refine = false;
  bool no_buffer = false;
  PartitionerConfig cfg;
};

struct EvaluateArgs {
  std::string input;
  std::string parts;
  std::uint32_t k = 0;
  std::optional<double> epsilon;
  std::string balance = "edge";
  std::string out;
};

struct GenerateArgs {
  RmatParams params;
  std::string out;
};

struct PathArgs {
  std::string input;
  std::string out;
};

void write_json(const nlohmann::json& doc, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

int cmd_partition(PartitionArgs& args) {
  PartitionerConfig cfg = args.cfg;
  cfg.balance = parse_balance_mode(args.balance);
  cfg.algorithm = parse_algorithm(args.algo);
  cfg.epsilon = args.epsilon.value_or(cfg.balance == BalanceMode::edge ? 0.10 : 0.05);
  cfg.refine = !args.no_refine;
  if (args.no_buffer) cfg.max_qsize = 0;
  cfg.validate();

  const fs::path input(args.input);
  const fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);
  const std::string stem = input.stem().string();
  const fs::path parts_path = out_dir / (stem + ".parts");
  const fs::path subparts_path = out_dir / (stem + ".subparts");
  const fs::path manifest_path = out_dir / (stem + ".manifest.json");

  std::ofstream trade_log;
  RunOptions options;
  if (!args.trade_log.empty()) {
    trade_log.open(args.trade_log);
    if (!trade_log) throw std::runtime_error("cannot write " + args.trade_log);
    options.on_trade = [&](const TradeRecord& trade, const Refiner&) { trade_log << to_json(trade).dump() << '\n'; };
  }

  GraphStream stream(input);
  RunReport report = run_partitioner(stream, cfg, options);
  write_part_map(report.state.part_of, parts_path);
  write_part_map(report.state.subpart_of, subparts_path);

  GraphStream again(input);
  const QualityReport quality = evaluate(again, report.state.part_of, cfg.k, cfg.epsilon);

  nlohmann::json manifest = to_json(report);
  manifest["config"] = to_json(cfg);
  manifest["input"] = {{"path", input.string()},
                       {"vertices", report.header.vertex_count},
                       {"edges", report.header.edge_count}};
  manifest["outputs"] = {{"parts", parts_path.string()}, {"subparts", subparts_path.string()}};
  if (!args.trade_log.empty()) manifest["outputs"]["trade_log"] = args.trade_log;
  manifest["quality"] = to_json(quality);
  write_json(manifest, manifest_path);
  std::cout << manifest.dump(2) << '\n';

  if (report.balance_violation) {
    std::cerr << "warning: final partition exceeds the " << to_string(cfg.balance)
              << "-balance capacity for epsilon " << cfg.epsilon << " (" << report.stream.fallback_assignments
              << " fallback placements); retry with a larger --epsilon, a smaller --k, or --balance vertex\n";
  }
  return 0;
}

int cmd_evaluate(const EvaluateArgs& args) {
  const std::vector<PartId> part_of = read_part_map(fs::path(args.parts));
  GraphStream stream{fs::path(args.input)};
  const QualityReport report = evaluate(stream, part_of, args.k, args.epsilon);
  nlohmann::json doc = to_json(report);
  if (report.epsilon_check) {
    const BalanceMode mode = parse_balance_mode(args.balance);
    doc["epsilon_check"]["balance"] = std::string(to_string(mode));
    doc["epsilon_check"]["ok"] =
        mode == BalanceMode::vertex ? report.epsilon_check->vertex_balanced : report.epsilon_check->edge_balanced;
  }
  if (!args.out.empty()) write_json(doc, args.out);
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int cmd_generate(const GenerateArgs& args) {
  const GraphHeader header = gen_rmat(args.params, fs::path(args.out));
  std::cout << nlohmann::json{{"path", args.out}, {"vertices", header.vertex_count}, {"edges", header.edge_count}}
                   .dump(2)
            << '\n';
  return 0;
}

int cmd_convert(const PathArgs& args) {
  const GraphHeader header = convert_edge_list(args.input, args.out);
  std::cout << nlohmann::json{{"path", args.out}, {"vertices", header.vertex_count}, {"edges", header.edge_count}}
                   .dump(2)
            << '\n';
  return 0;
}

int cmd_validate(const PathArgs& args) {
  const ValidationReport report = validate(fs::path(args.input));
  nlohmann::json cdf = nlohmann::json::array();
  for (const auto& [degree, fraction] : report.degree_cdf()) cdf.push_back({degree, fraction});
  const nlohmann::json doc = {
      {"vertices", report.header.vertex_count},
      {"edges", report.header.edge_count},
      {"neighbor_entries", report.neighbor_entries},
      {"symmetry_violations", report.symmetry_violations},
      {"duplicate_edges", report.duplicate_edges},
      {"edge_count_matches", report.edge_count_matches},
      {"ok", report.ok()},
      {"degree_cdf", cdf},
  };
  std::cout << doc.dump(2) << '\n';
  return report.ok() ? 0 : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Buffered streaming graph partitioner with sub-partition refinement"};
  app.require_subcommand(1);

  PartitionArgs part;
  auto* partition = app.add_subcommand("partition", "Partition a graph and write maps plus a run manifest");
  partition->add_option("--input", part.input, "Adjacency file")->required();
  partition->add_option("--k", part.cfg.k, "Number of partitions")->capture_default_str();
  partition->add_option("--epsilon", part.epsilon, "Balance slack (default 0.10 edge mode, 0.05 vertex mode)");
  partition->add_option("--balance", part.balance, "Balance measure")
      ->check(CLI::IsMember({"edge", "vertex"}))
      ->capture_default_str();
  partition->add_option("--algo", part.algo, "Partitioner")
      ->check(CLI::IsMember({"cuttana", "fennel", "ldg"}))
      ->capture_default_str();
  partition->add_option("--dmax", part.cfg.d_max, "Degree at or above which vertices skip the buffer")
      ->capture_default_str();
  partition->add_option("--qsize", part.cfg.max_qsize, "Buffer capacity")->capture_default_str();
  partition->add_option("--subparts", part.cfg.subparts_per_partition, "Sub-partitions per partition")
      ->capture_default_str();
  partition->add_option("--theta", part.cfg.theta, "Buffer score weight of assigned neighbors")
      ->capture_default_str();
  partition->add_option("--thresh", part.cfg.refine_threshold, "Minimum edge-cut gain per trade")
      ->capture_default_str();
  partition->add_option("--seed", part.cfg.seed, "Tie-break seed")->capture_default_str();
  partition->add_flag("--no-refine", part.no_refine, "Skip refinement");
  partition->add_flag("--no-buffer", part.no_buffer, "Place every vertex on arrival");
  partition->add_flag("--pipeline", part.cfg.pipeline, "Run sub-partitioning and weight accumulation as stages");
  partition->add_option("--shards", part.cfg.pipeline_shards, "Sub-partition stage threads (0 = auto)")
      ->capture_default_str();
  partition->add_option("--out-dir", part.out_dir, "Output directory")->capture_default_str();
  partition->add_option("--trade-log", part.trade_log, "Write refinement trades as JSON lines");

  EvaluateArgs eval;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Quality metrics of a partition map");
  evaluate_cmd->add_option("--input", eval.input, "Adjacency file")->required();
  evaluate_cmd->add_option("--parts", eval.parts, "Partition map, one 1-based id per line")->required();
  evaluate_cmd->add_option("--k", eval.k, "Number of partitions")->required()->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--epsilon", eval.epsilon, "Check balance against this slack");
  evaluate_cmd->add_option("--balance", eval.balance, "Measure reported as epsilon_check.ok")
      ->check(CLI::IsMember({"edge", "vertex"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--out", eval.out, "Also write the report here");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write an R-MAT graph in adjacency format");
  generate->add_option("--scale", gen.params.scale, "log2 of the vertex count")->capture_default_str();
  generate->add_option("--edge-factor", gen.params.edge_factor, "Sampled edges per vertex")->capture_default_str();
  generate->add_option("--seed", gen.params.seed, "Generator seed")->capture_default_str();
  generate->add_option("--a", gen.params.a)->capture_default_str();
  generate->add_option("--b", gen.params.b)->capture_default_str();
  generate->add_option("--c", gen.params.c)->capture_default_str();
  generate->add_option("--d", gen.params.d)->capture_default_str();
  generate->add_option("--out", gen.out, "Output adjacency file")->required();

  PathArgs conv;
  auto* convert = app.add_subcommand("convert", "Convert an edge list to adjacency format");
  convert->add_option("--input", conv.input, "Edge list")->required();
  convert->add_option("--out", conv.out, "Output adjacency file")->required();

  PathArgs val;
  auto* validate_cmd = app.add_subcommand("validate", "Check symmetry, duplicates and the edge count");
  validate_cmd->add_option("--input", val.input, "Adjacency file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*partition) return cmd_partition(part);
    if (*evaluate_cmd) return cmd_evaluate(eval);
    if (*generate) return cmd_generate(gen);
    if (*convert) return cmd_convert(conv);
    if (*validate_cmd) return cmd_validate(val);
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitUsage;
}
