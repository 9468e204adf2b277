#include "cuttana/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace cuttana {

namespace {

constexpr std::size_t kReadBufferBytes = 1 << 20;

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Parses whitespace-separated unsigned integers from `text` and calls `emit`
// for each. Returns false on any non-numeric token.
template <typename Emit>
bool for_each_uint(std::string_view text, Emit&& emit) {
  const char* p = text.data();
  const char* end = p + text.size();
  while (true) {
    while (p < end && is_blank(*p)) ++p;
    if (p == end) return true;
    std::uint64_t value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || (next < end && !is_blank(*next))) return false;
    emit(value);
    p = next;
  }
}

bool blank_line(std::string_view text) {
  return std::all_of(text.begin(), text.end(), is_blank);
}

std::string line_prefix(std::uint64_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

GraphFormatError::GraphFormatError(std::string message, std::uint64_t line)
    : std::runtime_error(line > 0 ? line_prefix(line) + message : message), line_(line) {}

GraphStream::GraphStream(const std::filesystem::path& path) {
  auto file = std::make_unique<std::ifstream>(path, std::ios::in | std::ios::binary);
  if (!*file) throw GraphFormatError("cannot open graph file '" + path.string() + "'", 0);
  input_ = std::move(file);
  read_header();
}

GraphStream::GraphStream(std::unique_ptr<std::istream> input) : input_(std::move(input)) {
  if (!input_ || !*input_) throw GraphFormatError("graph input is not readable", 0);
  read_header();
}

GraphStream::~GraphStream() = default;
GraphStream::GraphStream(GraphStream&&) noexcept = default;
GraphStream& GraphStream::operator=(GraphStream&&) noexcept = default;

void GraphStream::read_header() {
  if (!std::getline(*input_, line_)) throw GraphFormatError("missing header '<|V|> <|E|>'", 1);
  line_no_ = 1;
  std::vector<std::uint64_t> fields;
  if (!for_each_uint(line_, [&](std::uint64_t x) { fields.push_back(x); }) || fields.size() != 2) {
    throw GraphFormatError("malformed header, expected '<|V|> <|E|>'", 1);
  }
  if (fields[0] < 1) throw GraphFormatError("header declares zero vertices", 1);
  if (fields[0] > std::numeric_limits<VertexId>::max() - 1) {
    throw GraphFormatError("vertex count exceeds 32-bit id space", 1);
  }
  header_ = {fields[0], fields[1]};
}

bool GraphStream::next(VertexRecord& record) {
  if (records_read_ == header_.vertex_count) {
    // All records consumed; anything but trailing blank lines is an error.
    while (std::getline(*input_, line_)) {
      ++line_no_;
      if (!blank_line(line_)) {
        throw GraphFormatError("more records than the " + std::to_string(header_.vertex_count) +
                                   " declared in the header",
                               line_no_);
      }
    }
    return false;
  }
  if (!std::getline(*input_, line_)) {
    // A final empty record may lose its line to the last newline.
    if (records_read_ + 1 == header_.vertex_count) {
      line_.clear();
    } else {
      throw GraphFormatError("file ends after " + std::to_string(records_read_) + " of " +
                                 std::to_string(header_.vertex_count) + " records",
                             line_no_ + 1);
    }
  }
  ++line_no_;
  record.id = static_cast<VertexId>(records_read_);
  record.neighbors.clear();
  const std::uint64_t n = header_.vertex_count;
  std::optional<std::uint64_t> bad;
  const bool ok = for_each_uint(line_, [&](std::uint64_t x) {
    if (x < 1 || x > n) {
      if (!bad) bad = x;
      return;
    }
    record.neighbors.push_back(static_cast<VertexId>(x - 1));
  });
  if (!ok) throw GraphFormatError("non-numeric neighbor id", line_no_);
  if (bad) {
    throw GraphFormatError("neighbor " + std::to_string(*bad) + " out of range 1.." + std::to_string(n),
                           line_no_);
  }
  for (VertexId u : record.neighbors) {
    if (u == record.id) throw GraphFormatError("self-loop on vertex " + std::to_string(u + 1), line_no_);
  }
  ++records_read_;
  return true;
}

GraphStream stream_from_string(std::string text) {
  return GraphStream(std::make_unique<std::istringstream>(std::move(text)));
}

std::uint64_t AdjacencyGraph::edge_count() const {
  std::uint64_t entries = 0;
  for (const auto& list : adjacency) entries += list.size();
  return entries / 2;
}

AdjacencyGraph build_simple_graph(std::uint64_t vertex_count,
                                  std::vector<std::pair<VertexId, VertexId>> edges) {
  // Orient every pair as (min, max) so both directions collapse in one sort.
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  AdjacencyGraph graph;
  graph.adjacency.resize(vertex_count);
  std::vector<std::uint32_t> degree(vertex_count, 0);
  for (const auto& [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  for (std::uint64_t v = 0; v < vertex_count; ++v) graph.adjacency[v].reserve(degree[v]);
  for (const auto& [u, v] : edges) {
    graph.adjacency[u].push_back(v);
    graph.adjacency[v].push_back(u);
  }
  for (auto& list : graph.adjacency) std::sort(list.begin(), list.end());
  return graph;
}

void write_adjacency(const AdjacencyGraph& graph, std::ostream& out) {
  std::string buffer;
  buffer.reserve(kReadBufferBytes);
  char digits[24];
  auto flush = [&] {
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    buffer.clear();
  };
  buffer += std::to_string(graph.vertex_count()) + " " + std::to_string(graph.edge_count()) + "\n";
  for (const auto& list : graph.adjacency) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0) buffer.push_back(' ');
      auto [end, ec] = std::to_chars(digits, digits + sizeof(digits), std::uint64_t{list[i]} + 1);
      buffer.append(digits, end);
    }
    buffer.push_back('\n');
    if (buffer.size() >= kReadBufferBytes) flush();
  }
  flush();
}

void write_adjacency(const AdjacencyGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::out | std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_adjacency(graph, out);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string to_adjacency_text(const AdjacencyGraph& graph) {
  std::ostringstream out;
  write_adjacency(graph, out);
  return out.str();
}

AdjacencyGraph load_graph(GraphStream& stream) {
  AdjacencyGraph graph;
  graph.adjacency.resize(stream.header().vertex_count);
  VertexRecord record;
  while (stream.next(record)) graph.adjacency[record.id] = record.neighbors;
  return graph;
}

AdjacencyGraph parse_edge_list(std::istream& in) {
  std::unordered_map<std::uint64_t, VertexId> compact;
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto id_of = [&](std::uint64_t raw) {
    auto [it, inserted] = compact.try_emplace(raw, static_cast<VertexId>(compact.size()));
    return it->second;
  };
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    std::uint64_t ends[2] = {0, 0};
    int count = 0;
    // Extra columns (weights, timestamps) are tolerated and ignored.
    std::istringstream fields(line);
    std::string token;
    while (count < 2 && fields >> token) {
      auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), ends[count]);
      if (ec != std::errc() || p != token.data() + token.size() || ends[count] == 0) {
        throw GraphFormatError("unparseable edge '" + line + "'", line_no);
      }
      ++count;
    }
    if (count != 2) throw GraphFormatError("unparseable edge '" + line + "'", line_no);
    if (ends[0] == ends[1]) continue;
    const VertexId u = id_of(ends[0]);
    const VertexId v = id_of(ends[1]);
    edges.emplace_back(u, v);
  }
  if (compact.empty()) throw GraphFormatError("edge list contains no usable edges", 0);
  return build_simple_graph(compact.size(), std::move(edges));
}

GraphHeader convert_edge_list(const std::filesystem::path& src, const std::filesystem::path& dst) {
  std::ifstream in(src);
  if (!in) throw GraphFormatError("cannot open edge list '" + src.string() + "'", 0);
  const AdjacencyGraph graph = parse_edge_list(in);
  write_adjacency(graph, dst);
  return graph.header();
}

std::vector<std::pair<std::uint64_t, double>> ValidationReport::degree_cdf() const {
  std::vector<std::pair<std::uint64_t, double>> cdf;
  std::uint64_t seen = 0;
  for (const auto& [degree, count] : degree_histogram) {
    seen += count;
    cdf.emplace_back(degree, static_cast<double>(seen) / static_cast<double>(header.vertex_count));
  }
  return cdf;
}

ValidationReport validate(GraphStream& stream) {
  ValidationReport report;
  report.header = stream.header();

  // Pass 1: per-record duplicates and degrees; keep sorted lists for pass 2.
  AdjacencyGraph graph;
  graph.adjacency.resize(report.header.vertex_count);
  VertexRecord record;
  while (stream.next(record)) {
    auto& list = graph.adjacency[record.id];
    list = record.neighbors;
    std::sort(list.begin(), list.end());
    const auto unique_end = std::unique(list.begin(), list.end());
    report.duplicate_edges += static_cast<std::uint64_t>(list.end() - unique_end);
    list.erase(unique_end, list.end());
    report.neighbor_entries += record.neighbors.size();
    ++report.degree_histogram[record.neighbors.size()];
  }
  report.edge_count_matches = report.neighbor_entries == 2 * report.header.edge_count;

  // Pass 2: every entry v -> u needs a matching u -> v.
  for (VertexId v = 0; v < graph.adjacency.size(); ++v) {
    for (VertexId u : graph.adjacency[v]) {
      const auto& back = graph.adjacency[u];
      if (!std::binary_search(back.begin(), back.end(), v)) ++report.symmetry_violations;
    }
  }
  return report;
}

ValidationReport validate(const std::filesystem::path& path) {
  GraphStream stream(path);
  return validate(stream);
}

}  // namespace cuttana
