#pragma once

#include <utility>
#include <vector>

#include "twl/model.hpp"

namespace twl {

struct GreedyStep {
  EventId event_id = 0;
  double volume = 0.0;
  ActivityRegion region;
};

// Extraction order of the greedy run, one step per event.
using GreedyTrace = std::vector<GreedyStep>;

struct GreedyResult {
  ActivityDiagram diagram;
  GreedyTrace trace;
};

/// Removes [t_min, t_placed] x [t_placed, t_max] from an anchored region of an
/// event with timestamp `victim_time`. Victims at or before the placed
/// timestamp lose their top part, later ones their left part.
ActivityRegion trim(const ActivityRegion& victim, double victim_time, double placed_time);

/// Repeatedly places the unplaced event of largest volume (ties: smallest id)
/// and trims every unplaced conflicting event whose current region overlaps
/// the placed one.
GreedyResult solve_greedy(std::shared_ptr<const Instance> inst);

// Max-heap over event ids keyed by volume (ties: smaller id first) with
// in-place key updates.
class VolumeHeap {
 public:
  explicit VolumeHeap(std::vector<double> volumes);

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(EventId id) const { return position_.at(id) != kAbsent; }
  double volume(EventId id) const { return volume_.at(id); }
  EventId top() const { return heap_.front(); }
  EventId pop();
  void update(EventId id, double volume);

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  bool before(EventId a, EventId b) const {
    if (volume_[a] != volume_[b]) return volume_[a] > volume_[b];
    return a < b;
  }
  void place(std::size_t slot, EventId id);
  void sift_up(std::size_t slot);
  void sift_down(std::size_t slot);

  std::vector<EventId> heap_;
  std::vector<std::size_t> position_;
  std::vector<double> volume_;
};

}  // namespace twl
