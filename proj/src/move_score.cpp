#include "cuttana/move_score.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace cuttana {

bool better_move(const MoveCandidate& a, const MoveCandidate& b) {
  if (a.dec != b.dec) return a.dec > b.dec;
  if (a.subpart != b.subpart) return a.subpart < b.subpart;
  return a.dst < b.dst;
}

SourceMoveScores::SourceMoveScores(PartId src, std::uint32_t k, std::size_t expected_members)
    : src_(src), k_(k), decs_(k), best_(k) {
  capacity_ = std::bit_ceil(std::max<std::size_t>(expected_members, 1));
  subpart_.assign(capacity_, 0);
  size_.assign(capacity_, kNoSize);
  min_size_.assign(2 * capacity_, kNoSize);
  for (PartId d = 0; d < k_; ++d) {
    if (d == src_) continue;
    decs_[d].assign(capacity_, 0);
    best_[d].assign(2 * capacity_, kNoSlot);
  }
  free_slots_.reserve(capacity_);
  for (std::size_t slot = capacity_; slot-- > 0;) free_slots_.push_back(static_cast<std::uint32_t>(slot));
}

bool SourceMoveScores::slot_better(PartId dst, std::uint32_t a, std::uint32_t b) const {
  if (a == kNoSlot) return false;
  if (b == kNoSlot) return true;
  const auto& dec = decs_[dst];
  if (dec[a] != dec[b]) return dec[a] > dec[b];
  return subpart_[a] < subpart_[b];
}

void SourceMoveScores::pull(PartId dst, std::size_t node) {
  auto& tree = best_[dst];
  const std::uint32_t l = tree[2 * node];
  const std::uint32_t r = tree[2 * node + 1];
  tree[node] = slot_better(dst, r, l) ? r : l;
}

void SourceMoveScores::pull_size(std::size_t node) {
  min_size_[node] = std::min(min_size_[2 * node], min_size_[2 * node + 1]);
}

void SourceMoveScores::refresh_leaf(std::uint32_t slot) {
  const bool occupied = size_[slot] != kNoSize;
  std::size_t node = capacity_ + slot;
  min_size_[node] = size_[slot];
  for (PartId d = 0; d < k_; ++d) {
    if (d != src_) best_[d][node] = occupied ? slot : kNoSlot;
  }
  for (node /= 2; node >= 1; node /= 2) {
    pull_size(node);
    for (PartId d = 0; d < k_; ++d) {
      if (d != src_) pull(d, node);
    }
  }
}

void SourceMoveScores::grow() {
  const std::size_t old_capacity = capacity_;
  capacity_ *= 2;
  subpart_.resize(capacity_, 0);
  size_.resize(capacity_, kNoSize);
  for (std::size_t slot = capacity_; slot-- > old_capacity;) {
    free_slots_.push_back(static_cast<std::uint32_t>(slot));
  }
  min_size_.assign(2 * capacity_, kNoSize);
  for (std::size_t slot = 0; slot < capacity_; ++slot) min_size_[capacity_ + slot] = size_[slot];
  for (std::size_t node = capacity_ - 1; node >= 1; --node) pull_size(node);
  for (PartId d = 0; d < k_; ++d) {
    if (d == src_) continue;
    decs_[d].resize(capacity_, 0);
    auto& tree = best_[d];
    tree.assign(2 * capacity_, kNoSlot);
    for (std::size_t slot = 0; slot < capacity_; ++slot) {
      if (size_[slot] != kNoSize) tree[capacity_ + slot] = static_cast<std::uint32_t>(slot);
    }
    for (std::size_t node = capacity_ - 1; node >= 1; --node) pull(d, node);
  }
}

std::uint32_t SourceMoveScores::insert(SubpartId s, std::uint64_t size, std::span<const std::int64_t> decs) {
  if (free_slots_.empty()) grow();
  const std::uint32_t slot = free_slots_.back();
  free_slots_.pop_back();
  subpart_[slot] = s;
  size_[slot] = size;
  for (PartId d = 0; d < k_; ++d) {
    if (d != src_) decs_[d][slot] = decs[d];
  }
  refresh_leaf(slot);
  ++members_;
  return slot;
}

void SourceMoveScores::erase(std::uint32_t slot) {
  size_[slot] = kNoSize;
  refresh_leaf(slot);
  free_slots_.push_back(slot);
  --members_;
}

void SourceMoveScores::set_dec(std::uint32_t slot, PartId dst, std::int64_t dec) {
  decs_[dst][slot] = dec;
  for (std::size_t node = (capacity_ + slot) / 2; node >= 1; node /= 2) pull(dst, node);
}

std::optional<MoveCandidate> SourceMoveScores::top(PartId dst) const {
  if (dst == src_) return std::nullopt;
  const std::uint32_t slot = best_[dst][1];
  if (slot == kNoSlot) return std::nullopt;
  return candidate(dst, slot);
}

std::optional<MoveCandidate> SourceMoveScores::best_fitting(PartId dst, std::uint64_t room,
                                                            std::int64_t min_dec) const {
  if (dst == src_) return std::nullopt;
  const auto& tree = best_[dst];
  const auto& dec = decs_[dst];
  const std::uint32_t root = tree[1];
  if (root == kNoSlot || dec[root] < min_dec) return std::nullopt;
  if (size_[root] <= room) return candidate(dst, root);

  // Best-first descent: a node's key bounds every leaf below it.
  auto worse = [&](std::size_t a, std::size_t b) { return slot_better(dst, tree[b], tree[a]); };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> open(worse);
  open.push(1);
  while (!open.empty()) {
    const std::size_t node = open.top();
    open.pop();
    const std::uint32_t slot = tree[node];
    if (dec[slot] < min_dec) break;
    if (node >= capacity_) {
      if (size_[slot] <= room) return candidate(dst, slot);
      continue;
    }
    for (std::size_t child : {2 * node, 2 * node + 1}) {
      if (tree[child] != kNoSlot && min_size_[child] <= room) open.push(child);
    }
  }
  return std::nullopt;
}

}  // namespace cuttana
