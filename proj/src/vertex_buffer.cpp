#include "cuttana/vertex_buffer.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "cuttana/scoring.hpp"

namespace cuttana {

VertexBuffer::VertexBuffer(std::uint64_t vertex_count, std::uint64_t capacity, std::uint32_t d_max,
                           double theta)
    : slot_of_(vertex_count, kNoSlot), capacity_(capacity), d_max_(d_max), theta_(theta) {
  heap_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(capacity, vertex_count)));
}

void VertexBuffer::push(VertexId v, std::vector<VertexId> neighbors, std::uint32_t assigned) {
  if (heap_.size() >= capacity_) throw InvariantError("vertex buffer overflow");
  const auto degree = static_cast<std::uint32_t>(neighbors.size());
  if (degree == 0 || degree >= d_max_) {
    throw InvariantError("vertex " + std::to_string(v + 1) + " of degree " + std::to_string(degree) +
                         " is not eligible for buffering");
  }
  if (contains(v)) throw InvariantError("vertex " + std::to_string(v + 1) + " buffered twice");
  Entry e{v, assigned, buffer_score(degree, assigned, d_max_, theta_), std::move(neighbors)};
  stored_slots_ += degree;
  max_admitted_degree_ = std::max(max_admitted_degree_, degree);
  heap_.emplace_back();
  place(heap_.size() - 1, std::move(e));
  sift_up(heap_.size() - 1);
  peak_size_ = std::max(peak_size_, heap_.size());
  peak_slots_ = std::max(peak_slots_, stored_slots_);
}

VertexBuffer::Entry VertexBuffer::pop_max() { return take(0); }

VertexBuffer::Entry VertexBuffer::remove(VertexId v) { return take(slot_of_[v]); }

bool VertexBuffer::note_assigned_neighbor(VertexId v) {
  const std::size_t slot = slot_of_[v];
  Entry& e = heap_[slot];
  if (e.assigned < e.degree()) ++e.assigned;
  e.score = buffer_score(e.degree(), e.assigned, d_max_, theta_);
  const bool informed = e.assigned == e.degree();
  sift_up(slot);
  return informed;
}

void VertexBuffer::place(std::size_t slot, Entry&& e) {
  slot_of_[e.vertex] = static_cast<std::uint32_t>(slot);
  heap_[slot] = std::move(e);
}

void VertexBuffer::sift_up(std::size_t slot) {
  Entry moving = std::move(heap_[slot]);
  while (slot > 0) {
    const std::size_t parent = (slot - 1) / 2;
    if (!before(moving, heap_[parent])) break;
    place(slot, std::move(heap_[parent]));
    slot = parent;
  }
  place(slot, std::move(moving));
}

void VertexBuffer::sift_down(std::size_t slot) {
  Entry moving = std::move(heap_[slot]);
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t child = 2 * slot + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], moving)) break;
    place(slot, std::move(heap_[child]));
    slot = child;
  }
  place(slot, std::move(moving));
}

VertexBuffer::Entry VertexBuffer::take(std::size_t slot) {
  Entry out = std::move(heap_[slot]);
  slot_of_[out.vertex] = kNoSlot;
  stored_slots_ -= out.degree();
  const std::size_t last = heap_.size() - 1;
  if (slot != last) {
    place(slot, std::move(heap_[last]));
    heap_.pop_back();
    // The moved entry may need to travel either way.
    const VertexId moved = heap_[slot].vertex;
    sift_up(slot);
    sift_down(slot_of_[moved]);
  } else {
    heap_.pop_back();
  }
  return out;
}

}  // namespace cuttana
