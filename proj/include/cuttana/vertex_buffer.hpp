#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "cuttana/types.hpp"

namespace cuttana {

/**
 * Bounded buffer of deferred low-degree vertices, ordered max-first by buffer
 * score (ties: smaller vertex id first).
 *
 * An indexed binary heap: `slot_of_` maps a vertex to its heap slot, so score
 * increases after a neighbor is assigned are O(log size) sift-ups and a
 * fully-informed vertex can be pulled out from anywhere in O(log size).
 */
class VertexBuffer {
 public:
  struct Entry {
    VertexId vertex = 0;
    std::uint32_t assigned = 0;  // neighbors already placed
    double score = 0.0;
    std::vector<VertexId> neighbors;

    std::uint32_t degree() const { return static_cast<std::uint32_t>(neighbors.size()); }
  };

  VertexBuffer(std::uint64_t vertex_count, std::uint64_t capacity, std::uint32_t d_max, double theta);

  std::size_t size() const { return heap_.size(); }
  bool empty() const { return heap_.empty(); }
  std::uint64_t capacity() const { return capacity_; }
  bool contains(VertexId v) const { return slot_of_[v] != kNoSlot; }

  /// Admits `v`. Throws InvariantError if the buffer is full or the degree
  /// is outside [1, d_max).
  void push(VertexId v, std::vector<VertexId> neighbors, std::uint32_t assigned);

  /// Removes and returns the max-score entry.
  Entry pop_max();
  const Entry& top() const { return heap_.front(); }

  /// Records one more assigned neighbor of buffered `v`, refreshing its score.
  /// Returns true once every neighbor of `v` is assigned.
  bool note_assigned_neighbor(VertexId v);

  /// Removes buffered `v` wherever it sits.
  Entry remove(VertexId v);

  std::size_t peak_size() const { return peak_size_; }
  std::uint64_t peak_slots() const { return peak_slots_; }
  std::uint32_t max_admitted_degree() const { return max_admitted_degree_; }
  std::uint64_t stored_slots() const { return stored_slots_; }

  /// Entry for buffered `v` (tests use this to audit score freshness).
  const Entry& entry(VertexId v) const { return heap_[slot_of_[v]]; }
  const std::vector<Entry>& entries() const { return heap_; }

 private:
  static constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

  static bool before(const Entry& a, const Entry& b) {
    return a.score > b.score || (a.score == b.score && a.vertex < b.vertex);
  }
  void place(std::size_t slot, Entry&& e);
  void sift_up(std::size_t slot);
  void sift_down(std::size_t slot);
  Entry take(std::size_t slot);

  std::vector<Entry> heap_;
  std::vector<std::uint32_t> slot_of_;
  std::uint64_t capacity_;
  std::uint32_t d_max_;
  double theta_;
  std::size_t peak_size_ = 0;
  std::uint64_t stored_slots_ = 0;
  std::uint64_t peak_slots_ = 0;
  std::uint32_t max_admitted_degree_ = 0;
};

}  // namespace cuttana
