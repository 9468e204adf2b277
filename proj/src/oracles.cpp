// Brute-force reference answers for tests. Nothing here calls into the
// partitioner's scoring or incremental code.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cuttana/workbench.hpp"

namespace cuttana {

namespace {

double limit_for(std::uint64_t total, std::uint32_t k, double epsilon) {
  const std::uint64_t share = (total + k - 1) / k;
  return (1.0 + epsilon) * static_cast<double>(share) * (1.0 + 1e-12);
}

}  // namespace

std::optional<BestPartition> oracle_best_partition(const AdjacencyGraph& graph, std::uint32_t k, double epsilon,
                                                   BalanceMode mode) {
  if (k == 0) throw std::invalid_argument("oracle: k must be >= 1");
  const std::size_t n = graph.adjacency.size();
  double space = 1.0;
  for (std::size_t i = 0; i < n; ++i) space *= k;
  if (space > 65536.0) {
    throw std::invalid_argument("oracle: " + std::to_string(k) + "^" + std::to_string(n) +
                                " assignments exceed the enumeration limit");
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::uint64_t> weight(n, 1);
  std::uint64_t total = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (VertexId v : graph.adjacency[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
    if (mode == BalanceMode::edge) weight[u] = graph.adjacency[u].size();
    total += weight[u];
  }
  const double limit = limit_for(total, k, epsilon);

  std::optional<BestPartition> best;
  std::vector<PartId> assign(n, 0);
  std::vector<std::uint64_t> load(k);
  const auto count = static_cast<std::uint64_t>(space);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (std::size_t v = 0; v < n; ++v) {
      assign[v] = static_cast<PartId>(rest % k);
      rest /= k;
    }
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t v = 0; v < n; ++v) load[assign[v]] += weight[v];
    bool feasible = true;
    for (std::uint64_t l : load) feasible = feasible && static_cast<double>(l) <= limit;
    if (!feasible) continue;
    std::uint64_t cut = 0;
    for (const auto& [u, v] : edges) cut += assign[u] != assign[v];
    if (!best || cut < best->cut_edges) best = BestPartition{0.0, cut, assign};
  }
  if (best) best->lambda_ec = edges.empty() ? 0.0 : static_cast<double>(best->cut_edges) / edges.size();
  return best;
}

std::vector<OracleTrade> oracle_enumerate_trades(
    std::uint32_t k, const std::vector<std::uint32_t>& owner, const std::vector<std::uint64_t>& sizes,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>& weights, double capacity) {
  const std::size_t count = owner.size();
  if (count > 64) throw std::invalid_argument("oracle: more than 64 sub-partitions");
  if (sizes.size() != count) throw std::invalid_argument("oracle: owner and size vectors differ");

  auto cut_of = [&](const std::vector<std::uint32_t>& own) {
    std::uint64_t cut = 0;
    for (const auto& [a, b, w] : weights) {
      if (a != b && own[a] != own[b]) cut += w;
    }
    return cut;
  };
  std::vector<std::uint64_t> load(k, 0);
  for (std::size_t s = 0; s < count; ++s) load[owner[s]] += sizes[s];

  const auto base = static_cast<std::int64_t>(cut_of(owner));
  std::vector<OracleTrade> trades;
  std::vector<std::uint32_t> moved = owner;
  for (std::uint32_t s = 0; s < count; ++s) {
    for (std::uint32_t dst = 0; dst < k; ++dst) {
      if (dst == owner[s]) continue;
      if (static_cast<double>(load[dst] + sizes[s]) > capacity * (1.0 + 1e-12)) continue;
      moved[s] = dst;
      const std::int64_t gain = base - static_cast<std::int64_t>(cut_of(moved));
      moved[s] = owner[s];
      if (gain > 0) trades.push_back({s, dst, gain});
    }
  }
  std::sort(trades.begin(), trades.end(), [](const OracleTrade& x, const OracleTrade& y) {
    if (x.gain != y.gain) return x.gain > y.gain;
    if (x.subpart != y.subpart) return x.subpart < y.subpart;
    return x.dst < y.dst;
  });
  return trades;
}

}  // namespace cuttana
