#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "twl/geometry.hpp"

namespace twl {

using EventId = std::size_t;

struct Event {
  EventId id = 0;
  LabelShape shape = LabelShape::square(0, 0, 1);
  double timestamp = 0.0;
  double weight = 1.0;

  friend bool operator==(const Event&, const Event&) = default;
};

// A set of events together with the slider bounds. Event ids equal their
// position in the list.
class Instance {
 public:
  Instance(std::vector<Event> events, double t_min, double t_max,
           nlohmann::json meta = nlohmann::json::object());

  std::span<const Event> events() const { return events_; }
  const Event& event(EventId id) const { return events_.at(id); }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  const nlohmann::json& meta() const { return meta_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.t_min_ == b.t_min_ && a.t_max_ == b.t_max_ && a.events_ == b.events_;
  }

 private:
  std::vector<Event> events_;
  double t_min_;
  double t_max_;
  nlohmann::json meta_;
};

// Point (start, end) in configuration space.
struct TimeWindowQuery {
  double start = 0.0;
  double end = 0.0;
};

// The anchored rectangle [left, t_i] x [t_i, top].
struct ActivityRegion {
  EventId event_id = 0;
  double left = 0.0;
  double top = 0.0;

  friend bool operator==(const ActivityRegion&, const ActivityRegion&) = default;
};

/// The largest region an event can get: [t_min, t_i] x [t_i, t_max].
ActivityRegion maximum_region(const Instance& inst, EventId id);

double region_area(const ActivityRegion& r, const Event& e);
double region_volume(const ActivityRegion& r, const Event& e);

// One region per event of the referenced instance. Anchoring is not enforced
// here so that broken diagrams can still be loaded and reported on.
class ActivityDiagram {
 public:
  ActivityDiagram(std::shared_ptr<const Instance> instance, std::vector<ActivityRegion> regions);

  const Instance& instance() const { return *instance_; }
  const std::shared_ptr<const Instance>& instance_ptr() const { return instance_; }
  std::span<const ActivityRegion> regions() const { return regions_; }
  const ActivityRegion& region(EventId id) const { return regions_.at(id); }

 private:
  std::shared_ptr<const Instance> instance_;
  std::vector<ActivityRegion> regions_;
};

double diagram_volume(const ActivityDiagram& d);

enum class ViolationKind { kAnchoring, kBounds, kOverlap };

struct Violation {
  ViolationKind kind;
  EventId first = 0;
  EventId second = 0;  // only meaningful for kOverlap
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Reports every anchoring/bounds problem and every pair of conflicting
/// events whose regions share interior points.
ValidationReport validate(const ActivityDiagram& d);

/// Events shown for the window. An event is active iff its region has positive
/// area and contains the query point, where the region is taken half-open
/// (left, t_i] x [t_i, top) except that edges lying on t_min or t_max are
/// closed. Output is conflict-free and sorted by id.
std::vector<EventId> query(const ActivityDiagram& d, const TimeWindowQuery& q);

/// Checks that nesting windows never hides an event whose timestamp is still
/// inside the inner window.
bool containment_check(const ActivityDiagram& d, const TimeWindowQuery& outer,
                       const TimeWindowQuery& inner);

// Adjacency lists of the conflict relation, neighbours sorted by id.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(std::vector<std::vector<EventId>> adjacency);

  std::span<const EventId> neighbors(EventId id) const { return adjacency_.at(id); }
  bool adjacent(EventId a, EventId b) const;
  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const;

  friend bool operator==(const ConflictGraph&, const ConflictGraph&) = default;

 private:
  std::vector<std::vector<EventId>> adjacency_;
};

ConflictGraph build_conflict_graph(const Instance& inst);
// Single-threaded reference for build_conflict_graph.
ConflictGraph build_conflict_graph_serial(const Instance& inst);

}  // namespace twl
