#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cuttana/types.hpp"

namespace cuttana {

struct GraphHeader {
  std::uint64_t vertex_count = 0;
  std::uint64_t edge_count = 0;

  bool operator==(const GraphHeader&) const = default;
};

/// One line of an adjacency file. `id` and `neighbors` are 0-based.
struct VertexRecord {
  VertexId id = 0;
  std::vector<VertexId> neighbors;

  std::size_t degree() const { return neighbors.size(); }
};

/// Malformed graph input. `line()` is the 1-based line number, 0 if unknown.
class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(std::string message, std::uint64_t line);
  std::uint64_t line() const { return line_; }

 private:
  std::uint64_t line_;
};

/**
 * One-pass reader over the adjacency text format:
 *
 *   line 1:        |V| |E|
 *   line i+1:      space-separated neighbors of vertex i (1-based, may be empty)
 *
 * Only the current record is held in memory. Neighbor ids are bounds-checked
 * and self-loops rejected; symmetry is trusted (see validate()).
 */
class GraphStream {
 public:
  explicit GraphStream(const std::filesystem::path& path);
  explicit GraphStream(std::unique_ptr<std::istream> input);
  ~GraphStream();
  GraphStream(GraphStream&&) noexcept;
  GraphStream& operator=(GraphStream&&) noexcept;

  const GraphHeader& header() const { return header_; }

  /// Reads the next record into `record` (its buffer is reused). Returns false
  /// once all |V| records have been consumed.
  bool next(VertexRecord& record);

  std::uint64_t records_read() const { return records_read_; }

 private:
  void read_header();

  std::unique_ptr<std::istream> input_;
  GraphHeader header_;
  std::uint64_t records_read_ = 0;
  std::uint64_t line_no_ = 0;
  std::string line_;
};

/// Opens a stream over an in-memory adjacency document (tests, tools).
GraphStream stream_from_string(std::string text);

/// Simple undirected graph held in memory: 0-based CSR-free adjacency lists.
struct AdjacencyGraph {
  std::vector<std::vector<VertexId>> adjacency;

  std::uint64_t vertex_count() const { return adjacency.size(); }
  std::uint64_t edge_count() const;
  GraphHeader header() const { return {vertex_count(), edge_count()}; }
};

/// Builds a simple graph from 0-based endpoint pairs over `vertex_count`
/// vertices: symmetrized, duplicates collapsed, self-loops dropped, neighbor
/// lists sorted ascending.
AdjacencyGraph build_simple_graph(std::uint64_t vertex_count,
                                  std::vector<std::pair<VertexId, VertexId>> edges);

void write_adjacency(const AdjacencyGraph& graph, std::ostream& out);
void write_adjacency(const AdjacencyGraph& graph, const std::filesystem::path& path);
std::string to_adjacency_text(const AdjacencyGraph& graph);

/// Reads a whole adjacency file into memory (small graphs only).
AdjacencyGraph load_graph(GraphStream& stream);

/// Converts a `u v` edge list (ids are positive integers, `#` or `%` comment
/// lines ignored) into the adjacency format. Ids are compacted to 1..|V| in
/// order of first appearance; vertices only touched by self-loops vanish.
GraphHeader convert_edge_list(const std::filesystem::path& src, const std::filesystem::path& dst);
AdjacencyGraph parse_edge_list(std::istream& in);

struct ValidationReport {
  GraphHeader header;
  std::uint64_t symmetry_violations = 0;  // entries v -> u where u does not list v
  std::uint64_t duplicate_edges = 0;      // repeated entries within one record
  std::uint64_t neighbor_entries = 0;     // sum of record lengths
  bool edge_count_matches = false;        // neighbor_entries == 2 * |E|
  std::map<std::uint64_t, std::uint64_t> degree_histogram;

  bool ok() const { return symmetry_violations == 0 && duplicate_edges == 0 && edge_count_matches; }
  /// (degree, fraction of vertices with degree <= that value), ascending.
  std::vector<std::pair<std::uint64_t, double>> degree_cdf() const;
};

ValidationReport validate(GraphStream& stream);
ValidationReport validate(const std::filesystem::path& path);

}  // namespace cuttana
