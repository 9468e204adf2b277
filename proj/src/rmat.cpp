#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cuttana/scoring.hpp"
#include "cuttana/workbench.hpp"

namespace cuttana {

void RmatParams::validate() const {
  if (scale < 1 || scale > 31) throw std::invalid_argument("rmat scale must be in 1..31");
  if (edge_factor < 1) throw std::invalid_argument("rmat edge_factor must be >= 1");
  for (double q : {a, b, c, d}) {
    if (!(q >= 0.0)) throw std::invalid_argument("rmat quadrant probabilities must be non-negative");
  }
  if (std::abs(a + b + c + d - 1.0) > 1e-9) throw std::invalid_argument("rmat quadrant probabilities must sum to 1");
}

AdjacencyGraph gen_rmat(const RmatParams& params) {
  params.validate();
  const std::uint64_t n = std::uint64_t{1} << params.scale;
  const std::uint64_t m = n * params.edge_factor;
  Rng rng(mix64(params.seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  const double ab = params.a + params.b;
  const double abc = ab + params.c;
  for (std::uint64_t e = 0; e < m; ++e) {
    VertexId u = 0;
    VertexId v = 0;
    for (std::uint32_t level = 0; level < params.scale; ++level) {
      const double r = unit(rng);
      const bool row = r >= ab;
      const bool col = (r >= params.a && r < ab) || r >= abc;
      u = (u << 1) | static_cast<VertexId>(row);
      v = (v << 1) | static_cast<VertexId>(col);
    }
    edges.emplace_back(u, v);
  }

  std::vector<VertexId> relabel(n);
  std::iota(relabel.begin(), relabel.end(), VertexId{0});
  std::shuffle(relabel.begin(), relabel.end(), rng);
  for (auto& [u, v] : edges) {
    u = relabel[u];
    v = relabel[v];
  }
  return build_simple_graph(n, std::move(edges));
}

GraphHeader gen_rmat(const RmatParams& params, const std::filesystem::path& out) {
  const AdjacencyGraph graph = gen_rmat(params);
  write_adjacency(graph, out);
  return graph.header();
}

}  // namespace cuttana
