#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cuttana/graph_io.hpp"
#include "cuttana/types.hpp"

namespace cuttana {

/// Partition map that does not fit the graph or K.
class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EpsilonCheck {
  double epsilon = 0.0;
  double vertex_capacity = 0.0;
  double edge_capacity = 0.0;
  bool vertex_balanced = true;
  bool edge_balanced = true;
};

struct QualityReport {
  std::uint32_t k = 0;
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t cut_edges = 0;
  std::uint64_t communication_volume = 0;  // sum of D(u)
  double lambda_ec = 0.0;
  double lambda_cv = 0.0;
  double vertex_imbalance = 1.0;
  double edge_imbalance = 1.0;
  std::vector<std::uint64_t> vcount;
  std::vector<std::uint64_t> degsum;
  std::optional<EpsilonCheck> epsilon_check;
};

struct Imbalance {
  double vertex_imbalance = 1.0;
  double edge_imbalance = 1.0;
  std::vector<std::uint64_t> vcount;
  std::vector<std::uint64_t> degsum;
  std::optional<EpsilonCheck> epsilon_check;
};

/// Throws MapError unless `part_of` has one entry per vertex, each below k.
void check_part_map(const std::vector<PartId>& part_of, std::uint64_t vertex_count, std::uint32_t k);

/// Fraction of edges crossing partitions. One pass; each edge counted once.
double edge_cut(GraphStream& stream, const std::vector<PartId>& part_of);

/// Sum of D(u) over K |V|.
double communication_volume(GraphStream& stream, const std::vector<PartId>& part_of, std::uint32_t k);

/// Max-over-average ratios; the epsilon check is filled when `epsilon` is given.
Imbalance imbalance(const std::vector<PartId>& part_of, const std::vector<std::uint64_t>& degrees, std::uint32_t k,
                    std::optional<double> epsilon = std::nullopt);

/// Everything above in a single pass over the stream.
QualityReport evaluate(GraphStream& stream, const std::vector<PartId>& part_of, std::uint32_t k,
                       std::optional<double> epsilon = std::nullopt);

nlohmann::json to_json(const QualityReport& report);

/// Map files hold one 1-based partition id per line; in memory ids are 0-based.
std::vector<PartId> read_part_map(std::istream& in);
std::vector<PartId> read_part_map(const std::filesystem::path& path);
void write_part_map(const std::vector<PartId>& part_of, std::ostream& out);
void write_part_map(const std::vector<PartId>& part_of, const std::filesystem::path& path);

}  // namespace cuttana
