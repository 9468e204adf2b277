#include "cuttana/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace cuttana {

namespace {

struct Pass {
  std::uint64_t cut = 0;
  std::uint64_t volume = 0;
  std::vector<std::uint64_t> degrees;
};

// Distinct foreign partitions per vertex are counted with a stamp array, so
// the pass needs O(|V| + K) memory beyond the current record.
Pass stream_pass(GraphStream& stream, const std::vector<PartId>& part_of, std::uint32_t k) {
  const GraphHeader header = stream.header();
  check_part_map(part_of, header.vertex_count, k);
  Pass pass;
  pass.degrees.assign(header.vertex_count, 0);
  std::vector<std::uint64_t> stamp(k, 0);
  std::uint64_t tick = 0;
  VertexRecord rec;
  while (stream.next(rec)) {
    ++tick;
    const PartId pu = part_of[rec.id];
    pass.degrees[rec.id] = rec.degree();
    for (VertexId v : rec.neighbors) {
      const PartId pv = part_of[v];
      if (pv == pu) continue;
      if (rec.id < v) ++pass.cut;
      if (stamp[pv] != tick) {
        stamp[pv] = tick;
        ++pass.volume;
      }
    }
  }
  return pass;
}

double ratio(std::uint64_t num, double den) { return den == 0.0 ? 0.0 : static_cast<double>(num) / den; }

double max_over_average(const std::vector<std::uint64_t>& values) {
  std::uint64_t total = 0;
  std::uint64_t peak = 0;
  for (std::uint64_t v : values) {
    total += v;
    peak = std::max(peak, v);
  }
  if (total == 0) return 1.0;
  return static_cast<double>(peak) * static_cast<double>(values.size()) / static_cast<double>(total);
}

}  // namespace

void check_part_map(const std::vector<PartId>& part_of, std::uint64_t vertex_count, std::uint32_t k) {
  if (k == 0) throw MapError("k must be at least 1");
  if (part_of.size() != vertex_count) {
    throw MapError("map covers " + std::to_string(part_of.size()) + " of " + std::to_string(vertex_count) +
                   " vertices");
  }
  for (std::size_t v = 0; v < part_of.size(); ++v) {
    if (part_of[v] == kUnassigned) throw MapError("vertex " + std::to_string(v + 1) + " is unassigned");
    if (part_of[v] >= k) {
      throw MapError("vertex " + std::to_string(v + 1) + " has partition " + std::to_string(part_of[v] + 1) +
                     ", outside 1.." + std::to_string(k));
    }
  }
}

double edge_cut(GraphStream& stream, const std::vector<PartId>& part_of) {
  // Labels are immaterial for the cut, so K is just the largest id seen.
  std::uint32_t k = 1;
  for (PartId p : part_of) {
    if (p != kUnassigned) k = std::max(k, p + 1);
  }
  const std::uint64_t edges = stream.header().edge_count;
  const Pass pass = stream_pass(stream, part_of, k);
  return ratio(pass.cut, static_cast<double>(edges));
}

double communication_volume(GraphStream& stream, const std::vector<PartId>& part_of, std::uint32_t k) {
  const std::uint64_t n = stream.header().vertex_count;
  const Pass pass = stream_pass(stream, part_of, k);
  return ratio(pass.volume, static_cast<double>(k) * static_cast<double>(n));
}

Imbalance imbalance(const std::vector<PartId>& part_of, const std::vector<std::uint64_t>& degrees, std::uint32_t k,
                    std::optional<double> epsilon) {
  check_part_map(part_of, degrees.size(), k);
  Imbalance out;
  out.vcount.assign(k, 0);
  out.degsum.assign(k, 0);
  std::uint64_t endpoints = 0;
  for (std::size_t v = 0; v < part_of.size(); ++v) {
    ++out.vcount[part_of[v]];
    out.degsum[part_of[v]] += degrees[v];
    endpoints += degrees[v];
  }
  out.vertex_imbalance = max_over_average(out.vcount);
  out.edge_imbalance = max_over_average(out.degsum);
  if (epsilon) {
    EpsilonCheck check;
    check.epsilon = *epsilon;
    check.vertex_capacity = capacity(part_of.size(), k, *epsilon);
    check.edge_capacity = capacity(endpoints, k, *epsilon);
    for (PartId p = 0; p < k; ++p) {
      check.vertex_balanced = check.vertex_balanced && fits(static_cast<double>(out.vcount[p]), check.vertex_capacity);
      check.edge_balanced = check.edge_balanced && fits(static_cast<double>(out.degsum[p]), check.edge_capacity);
    }
    out.epsilon_check = check;
  }
  return out;
}

QualityReport evaluate(GraphStream& stream, const std::vector<PartId>& part_of, std::uint32_t k,
                       std::optional<double> epsilon) {
  const GraphHeader header = stream.header();
  const Pass pass = stream_pass(stream, part_of, k);
  Imbalance balance = imbalance(part_of, pass.degrees, k, epsilon);

  QualityReport report;
  report.k = k;
  report.vertex_count = header.vertex_count;
  report.edge_count = header.edge_count;
  report.cut_edges = pass.cut;
  report.communication_volume = pass.volume;
  report.lambda_ec = ratio(pass.cut, static_cast<double>(header.edge_count));
  report.lambda_cv = ratio(pass.volume, static_cast<double>(k) * static_cast<double>(header.vertex_count));
  report.vertex_imbalance = balance.vertex_imbalance;
  report.edge_imbalance = balance.edge_imbalance;
  report.vcount = std::move(balance.vcount);
  report.degsum = std::move(balance.degsum);
  report.epsilon_check = balance.epsilon_check;
  return report;
}

nlohmann::json to_json(const QualityReport& report) {
  nlohmann::json out = {
      {"k", report.k},
      {"vertices", report.vertex_count},
      {"edges", report.edge_count},
      {"cut_edges", report.cut_edges},
      {"communication_volume", report.communication_volume},
      {"lambda_ec", report.lambda_ec},
      {"lambda_cv", report.lambda_cv},
      {"vertex_imbalance", report.vertex_imbalance},
      {"edge_imbalance", report.edge_imbalance},
      {"vcount", report.vcount},
      {"degsum", report.degsum},
  };
  if (report.epsilon_check) {
    const EpsilonCheck& c = *report.epsilon_check;
    out["epsilon_check"] = {
        {"epsilon", c.epsilon},
        {"vertex_capacity", c.vertex_capacity},
        {"edge_capacity", c.edge_capacity},
        {"vertex_balanced", c.vertex_balanced},
        {"edge_balanced", c.edge_balanced},
    };
  } else {
    out["epsilon_check"] = nullptr;
  }
  return out;
}

std::vector<PartId> read_part_map(std::istream& in) {
  std::vector<PartId> part_of;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::uint64_t id = 0;
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    const auto [ptr, ec] = std::from_chars(begin, end, id);
    if (ec != std::errc() || ptr != end || id == 0 || id > kUnassigned) {
      throw MapError("map line " + std::to_string(line_no) + ": expected a partition id >= 1, got '" +
                     line.substr(first, last - first + 1) + "'");
    }
    part_of.push_back(static_cast<PartId>(id - 1));
  }
  return part_of;
}

std::vector<PartId> read_part_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MapError("cannot open map " + path.string());
  return read_part_map(in);
}

void write_part_map(const std::vector<PartId>& part_of, std::ostream& out) {
  std::string buffer;
  buffer.reserve(1 << 16);
  for (PartId p : part_of) {
    buffer += std::to_string(static_cast<std::uint64_t>(p) + 1);
    buffer += '\n';
    if (buffer.size() > (1 << 16) - 32) {
      out << buffer;
      buffer.clear();
    }
  }
  out << buffer;
}

void write_part_map(const std::vector<PartId>& part_of, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_part_map(part_of, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace cuttana
