#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cuttana/types.hpp"

namespace cuttana {

struct MoveCandidate {
  std::int64_t dec = 0;
  SubpartId subpart = 0;
  PartId dst = 0;

  bool operator==(const MoveCandidate&) const = default;
};

/// Strict preference: larger DEC, then smaller sub-partition id, then smaller
/// destination id.
bool better_move(const MoveCandidate& a, const MoveCandidate& b);

/**
 * Move-score sets MS(src, dst) for one source partition and every destination.
 *
 * Members of `src` occupy slots of a shared slot array; for each destination a
 * segment tree over the slots keeps the best (DEC, id) at its root, so the
 * unconstrained maximum is an O(1) read and a DEC change is an O(log slots)
 * path update. A second tree tracks the minimum member size per subtree so a
 * capacity-constrained query can prune subtrees that cannot fit.
 */
class SourceMoveScores {
 public:
  static constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

  SourceMoveScores(PartId src, std::uint32_t k, std::size_t expected_members);

  /// `decs[d]` is DEC toward d; the entry for d == src is ignored.
  std::uint32_t insert(SubpartId s, std::uint64_t size, std::span<const std::int64_t> decs);
  void erase(std::uint32_t slot);
  void set_dec(std::uint32_t slot, PartId dst, std::int64_t dec);

  std::int64_t dec(std::uint32_t slot, PartId dst) const { return decs_[dst][slot]; }
  SubpartId subpart_at(std::uint32_t slot) const { return subpart_[slot]; }
  std::size_t size() const { return members_; }

  /// Unconstrained maximum of MS(src, dst), O(1).
  std::optional<MoveCandidate> top(PartId dst) const;

  /// Maximum over members with size <= room and DEC >= min_dec.
  std::optional<MoveCandidate> best_fitting(PartId dst, std::uint64_t room, std::int64_t min_dec) const;

 private:
  static constexpr std::uint64_t kNoSize = std::numeric_limits<std::uint64_t>::max();

  bool slot_better(PartId dst, std::uint32_t a, std::uint32_t b) const;
  void pull(PartId dst, std::size_t node);
  void pull_size(std::size_t node);
  void refresh_leaf(std::uint32_t slot);
  void grow();
  MoveCandidate candidate(PartId dst, std::uint32_t slot) const { return {decs_[dst][slot], subpart_[slot], dst}; }

  PartId src_;
  std::uint32_t k_;
  std::size_t capacity_ = 0;  // leaves, power of two
  std::size_t members_ = 0;
  std::vector<SubpartId> subpart_;                  // per slot
  std::vector<std::uint64_t> size_;                 // per slot, kNoSize when free
  std::vector<std::uint32_t> free_slots_;
  std::vector<std::uint64_t> min_size_;             // tree, 2 * capacity
  std::vector<std::vector<std::int64_t>> decs_;     // [dst][slot]
  std::vector<std::vector<std::uint32_t>> best_;    // [dst] tree of best slots
};

}  // namespace cuttana
