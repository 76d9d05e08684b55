#include "twl/greedy.hpp"

#include <algorithm>
#include <stdexcept>

namespace twl {

VolumeHeap::VolumeHeap(std::vector<double> volumes)
    : position_(volumes.size()), volume_(std::move(volumes)) {
  heap_.reserve(volume_.size());
  for (EventId id = 0; id < volume_.size(); ++id) {
    heap_.push_back(id);
    position_[id] = id;
  }
  for (std::size_t slot = heap_.size() / 2; slot-- > 0;) sift_down(slot);
}

EventId VolumeHeap::pop() {
  if (heap_.empty()) throw std::out_of_range("pop from empty heap");
  const EventId best = heap_.front();
  const EventId last = heap_.back();
  heap_.pop_back();
  position_[best] = kAbsent;
  if (!heap_.empty()) {
    place(0, last);
    sift_down(0);
  }
  return best;
}

void VolumeHeap::update(EventId id, double volume) {
  if (!contains(id)) throw std::out_of_range("event not in heap");
  const double old = volume_[id];
  volume_[id] = volume;
  if (volume > old) {
    sift_up(position_[id]);
  } else {
    sift_down(position_[id]);
  }
}

void VolumeHeap::place(std::size_t slot, EventId id) {
  heap_[slot] = id;
  position_[id] = slot;
}

void VolumeHeap::sift_up(std::size_t slot) {
  const EventId id = heap_[slot];
  while (slot > 0) {
    const std::size_t parent = (slot - 1) / 2;
    if (!before(id, heap_[parent])) break;
    place(slot, heap_[parent]);
    slot = parent;
  }
  place(slot, id);
}

void VolumeHeap::sift_down(std::size_t slot) {
  const EventId id = heap_[slot];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * slot + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], id)) break;
    place(slot, heap_[child]);
    slot = child;
  }
  place(slot, id);
}

ActivityRegion trim(const ActivityRegion& victim, double victim_time, double placed_time) {
  ActivityRegion out = victim;
  if (victim_time <= placed_time) {
    out.top = std::min(out.top, placed_time);
  } else {
    out.left = std::max(out.left, placed_time);
  }
  return out;
}

GreedyResult solve_greedy(std::shared_ptr<const Instance> inst) {
  if (!inst) throw std::invalid_argument("solve_greedy needs an instance");
  const std::size_t n = inst->size();
  const ConflictGraph graph = build_conflict_graph(*inst);

  std::vector<ActivityRegion> regions;
  std::vector<double> volumes;
  regions.reserve(n);
  volumes.reserve(n);
  for (const Event& e : inst->events()) {
    regions.push_back(maximum_region(*inst, e.id));
    volumes.push_back(region_volume(regions.back(), e));
  }

  VolumeHeap heap(std::move(volumes));
  GreedyTrace trace;
  trace.reserve(n);
  while (!heap.empty()) {
    const double volume = heap.volume(heap.top());
    const EventId placed = heap.pop();
    const ActivityRegion& fixed = regions[placed];
    const double t_placed = inst->event(placed).timestamp;
    trace.push_back({placed, volume, fixed});

    for (EventId j : graph.neighbors(placed)) {
      if (!heap.contains(j)) continue;
      const Event& victim = inst->event(j);
      ActivityRegion& current = regions[j];
      const bool overlap = std::max(current.left, fixed.left) < std::min(victim.timestamp, t_placed) &&
                           std::max(victim.timestamp, t_placed) < std::min(current.top, fixed.top);
      if (!overlap) continue;
      current = trim(current, victim.timestamp, t_placed);
      heap.update(j, region_volume(current, victim));
    }
  }
  return {ActivityDiagram(std::move(inst), std::move(regions)), std::move(trace)};
}

}  // namespace twl
