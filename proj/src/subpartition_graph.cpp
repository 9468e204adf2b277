#include "cuttana/subpartition_graph.hpp"

#include <algorithm>
#include <tuple>

namespace cuttana {

std::uint64_t SubpartEdgeWeights::key(SubpartId a, SubpartId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void SubpartEdgeWeights::add(SubpartId a, SubpartId b, std::uint64_t weight) {
  if (a == b || weight == 0) return;
  weights_[key(a, b)] += weight;
}

std::uint64_t SubpartEdgeWeights::weight(SubpartId a, SubpartId b) const {
  if (a == b) return 0;
  auto it = weights_.find(key(a, b));
  return it == weights_.end() ? 0 : it->second;
}

std::uint64_t SubpartEdgeWeights::total_weight() const {
  std::uint64_t total = 0;
  for (const auto& [k, w] : weights_) total += w;
  return total;
}

std::vector<std::tuple<SubpartId, SubpartId, std::uint64_t>> SubpartEdgeWeights::sorted_pairs() const {
  std::vector<std::tuple<SubpartId, SubpartId, std::uint64_t>> out;
  out.reserve(weights_.size());
  for (const auto& [k, w] : weights_) {
    out.emplace_back(static_cast<SubpartId>(k >> 32), static_cast<SubpartId>(k & 0xffffffffu), w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeightAccumulator::WeightAccumulator(std::uint64_t vertex_count) : subpart_of_(vertex_count, kUnassigned) {}

void WeightAccumulator::on_assigned(VertexId v, SubpartId sp, std::span<const VertexId> neighbors) {
  subpart_of_[v] = sp;
  for (VertexId u : neighbors) {
    const SubpartId other = subpart_of_[u];
    if (other != kUnassigned) weights_.add(other, sp);
  }
}

SubpartAdjacency SubpartAdjacency::from(const SubpartEdgeWeights& w, std::uint32_t subpart_count) {
  const auto pairs = w.sorted_pairs();
  SubpartAdjacency adj;
  adj.offsets.assign(subpart_count + 1, 0);
  for (const auto& [a, b, weight] : pairs) {
    if (a >= subpart_count || b >= subpart_count) {
      throw InvariantError("edge weight references sub-partition outside 0..K'-1");
    }
    ++adj.offsets[a + 1];
    ++adj.offsets[b + 1];
  }
  for (std::uint32_t s = 0; s < subpart_count; ++s) adj.offsets[s + 1] += adj.offsets[s];
  adj.targets.resize(adj.offsets.back());
  adj.weights.resize(adj.offsets.back());
  std::vector<std::uint64_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& [a, b, weight] : pairs) {
    adj.targets[fill[a]] = b;
    adj.weights[fill[a]++] = weight;
    adj.targets[fill[b]] = a;
    adj.weights[fill[b]++] = weight;
  }
  return adj;
}

}  // namespace cuttana
