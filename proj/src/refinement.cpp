#include "cuttana/refinement.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cuttana {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

Refiner::Refiner(std::uint32_t k, std::vector<PartId> owner, std::vector<std::uint64_t> sizes,
                 const SubpartEdgeWeights& weights, double capacity, std::uint64_t threshold)
    : k_(k),
      owner_(std::move(owner)),
      sizes_(std::move(sizes)),
      loads_(k, 0),
      capacity_(capacity),
      threshold_(threshold) {
  if (k_ == 0) throw std::invalid_argument("refinement needs k >= 1");
  if (threshold_ == 0) throw std::invalid_argument("refine threshold must be >= 1");
  if (sizes_.size() != owner_.size()) throw std::invalid_argument("owner and size vectors differ in length");
  const auto n = static_cast<std::uint32_t>(owner_.size());
  std::vector<std::size_t> members(k_, 0);
  for (SubpartId s = 0; s < n; ++s) {
    if (owner_[s] >= k_) throw InvariantError("sub-partition " + std::to_string(s) + " has no valid owner");
    loads_[owner_[s]] += sizes_[s];
    ++members[owner_[s]];
  }
  adjacency_ = SubpartAdjacency::from(weights, n);

  ecp_.assign(static_cast<std::size_t>(n) * k_, 0);
  for (SubpartId s = 0; s < n; ++s) {
    std::int64_t total = 0;
    for (std::uint64_t e = adjacency_.offsets[s]; e < adjacency_.offsets[s + 1]; ++e) {
      const auto w = static_cast<std::int64_t>(adjacency_.weights[e]);
      total += w;
      ecp_[index(s, owner_[adjacency_.targets[e]])] -= w;
      if (owner_[adjacency_.targets[e]] != owner_[s]) edge_cut_ += adjacency_.weights[e];
    }
    for (PartId d = 0; d < k_; ++d) ecp_[index(s, d)] += total;
  }
  edge_cut_ /= 2;

  scores_.reserve(k_);
  for (PartId p = 0; p < k_; ++p) scores_.emplace_back(p, k_, members[p]);
  slot_of_.assign(n, SourceMoveScores::kNoSlot);
  scratch_decs_.assign(k_, 0);
  for (SubpartId s = 0; s < n; ++s) insert_scores(s);
}

Refiner Refiner::from_state(const PartitionState& state, const SubpartEdgeWeights& weights, double capacity,
                            std::uint64_t threshold) {
  const std::uint32_t n = state.total_subparts();
  std::vector<PartId> owner(n);
  std::vector<std::uint64_t> sizes(n);
  for (SubpartId s = 0; s < n; ++s) {
    owner[s] = s / state.subparts_per_partition;
    sizes[s] = state.sub_load(s);
  }
  return Refiner(state.k, std::move(owner), std::move(sizes), weights, capacity, threshold);
}

void Refiner::insert_scores(SubpartId s) {
  const PartId src = owner_[s];
  for (PartId d = 0; d < k_; ++d) scratch_decs_[d] = d == src ? 0 : ecp(s, src) - ecp(s, d);
  slot_of_[s] = scores_[src].insert(s, sizes_[s], scratch_decs_);
}

std::int64_t Refiner::dec(SubpartId s, PartId dst) const {
  if (dst == owner_[s]) {
    throw std::invalid_argument("dec: destination " + std::to_string(dst) + " already owns sub-partition " +
                                std::to_string(s));
  }
  return ecp(s, owner_[s]) - ecp(s, dst);
}

std::int64_t Refiner::stored_dec(SubpartId s, PartId dst) const {
  if (dst == owner_[s]) throw std::invalid_argument("stored_dec: destination owns the sub-partition");
  return scores_[owner_[s]].dec(slot_of_[s], dst);
}

std::optional<std::uint64_t> Refiner::room(PartId dst) const {
  const double limit = std::floor(capacity_ * (1.0 + 1e-12));
  if (limit < 0.0 || static_cast<double>(loads_[dst]) > limit) return std::nullopt;
  return static_cast<std::uint64_t>(limit) - loads_[dst];
}

std::optional<MoveCandidate> Refiner::find_best_trade() const {
  std::optional<MoveCandidate> best;
  for (PartId dst = 0; dst < k_; ++dst) {
    const auto space = room(dst);
    if (!space) continue;
    for (PartId src = 0; src < k_; ++src) {
      if (src == dst) continue;
      const std::int64_t floor_dec = best ? best->dec : static_cast<std::int64_t>(threshold_);
      const auto found = scores_[src].best_fitting(dst, *space, floor_dec);
      if (found && (!best || better_move(*found, *best))) best = found;
    }
  }
  return best;
}

TradeRecord Refiner::apply_trade(const MoveCandidate& move) {
  const SubpartId s = move.subpart;
  if (s >= owner_.size() || move.dst >= k_) throw std::invalid_argument("apply_trade: move out of range");
  const PartId src = owner_[s];
  const PartId dst = move.dst;
  if (src == dst) throw std::invalid_argument("apply_trade: sub-partition already in destination");
  const auto space = room(dst);
  if (!space || sizes_[s] > *space) {
    throw InvariantError("apply_trade: moving sub-partition " + std::to_string(s) + " would overfill partition " +
                         std::to_string(dst));
  }
  const std::int64_t gain = dec(s, dst);

  std::uint64_t updates = 0;
  scores_[src].erase(slot_of_[s]);
  updates += k_ - 1;
  owner_[s] = dst;
  loads_[src] -= sizes_[s];
  loads_[dst] += sizes_[s];

  for (std::uint64_t e = adjacency_.offsets[s]; e < adjacency_.offsets[s + 1]; ++e) {
    const SubpartId t = adjacency_.targets[e];
    const auto w = static_cast<std::int64_t>(adjacency_.weights[e]);
    ecp_[index(t, src)] += w;
    ecp_[index(t, dst)] -= w;
    const PartId o = owner_[t];
    auto& set = scores_[o];
    const std::uint32_t slot = slot_of_[t];
    if (o == src || o == dst) {
      for (PartId d = 0; d < k_; ++d) {
        if (d == o) continue;
        set.set_dec(slot, d, ecp(t, o) - ecp(t, d));
        ++updates;
      }
    } else {
      set.set_dec(slot, src, ecp(t, o) - ecp(t, src));
      set.set_dec(slot, dst, ecp(t, o) - ecp(t, dst));
      updates += 2;
    }
  }

  insert_scores(s);
  updates += k_ - 1;

  if (gain > static_cast<std::int64_t>(edge_cut_)) throw InvariantError("apply_trade: DEC exceeds current edge-cut");
  edge_cut_ -= static_cast<std::uint64_t>(gain);
  return TradeRecord{++steps_, s, src, dst, gain, edge_cut_, updates};
}

RefineSummary Refiner::refine(const std::function<void(const TradeRecord&, const Refiner&)>& on_trade) {
  RefineSummary summary;
  summary.initial_edge_cut = edge_cut_;
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t trade_bound = edge_cut_ / threshold_;
  while (const auto move = find_best_trade()) {
    const TradeRecord record = apply_trade(*move);
    if (record.ms_updates > update_bound()) {
      throw InvariantError("trade " + std::to_string(record.step) + " touched " + std::to_string(record.ms_updates) +
                           " move-score entries, bound is " + std::to_string(update_bound()));
    }
    ++summary.trades;
    summary.max_ms_updates = std::max(summary.max_ms_updates, record.ms_updates);
    if (summary.trades > trade_bound) throw InvariantError("refinement exceeded initial-cut / threshold trades");
    if (on_trade) on_trade(record, *this);
  }
  summary.final_edge_cut = edge_cut_;
  summary.refine_ms = elapsed_ms(start);
  return summary;
}

void Refiner::write_back(PartitionState& state) const {
  if (state.total_subparts() != subpart_count() || state.k != k_) {
    throw std::invalid_argument("write_back: state shape does not match the refiner");
  }
  for (VertexId v = 0; v < state.part_of.size(); ++v) {
    if (state.subpart_of[v] == kUnassigned) throw InvariantError("write_back: vertex without sub-partition");
    state.part_of[v] = owner_[state.subpart_of[v]];
  }
  std::fill(state.vcount.begin(), state.vcount.end(), 0);
  std::fill(state.degsum.begin(), state.degsum.end(), 0);
  for (SubpartId s = 0; s < subpart_count(); ++s) {
    state.vcount[owner_[s]] += state.sub_vcount[s];
    state.degsum[owner_[s]] += state.sub_degsum[s];
  }
}

bool Refiner::equal_size_count_bound_holds() const {
  std::uint64_t common = 0;
  for (std::uint64_t size : sizes_) {
    if (size == 0) continue;
    if (common == 0) common = size;
    if (size != common) return true;
  }
  if (common == 0) return true;
  std::vector<std::uint64_t> count(k_, 0);
  for (SubpartId s = 0; s < subpart_count(); ++s) {
    if (sizes_[s] != 0) ++count[owner_[s]];
  }
  const double limit = capacity_ / static_cast<double>(common);
  for (std::uint64_t c : count) {
    if (!fits(static_cast<double>(c), limit)) return false;
  }
  return true;
}

}  // namespace cuttana
