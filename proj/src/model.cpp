#include "twl/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace twl {

Instance::Instance(std::vector<Event> events, double t_min, double t_max, nlohmann::json meta)
    : events_(std::move(events)), t_min_(t_min), t_max_(t_max), meta_(std::move(meta)) {
  if (!std::isfinite(t_min_) || !std::isfinite(t_max_) || !(t_min_ < t_max_)) {
    throw std::invalid_argument("instance requires finite t_min < t_max");
  }
  for (std::size_t k = 0; k < events_.size(); ++k) {
    const Event& e = events_[k];
    if (e.id != k) {
      throw std::invalid_argument("event at position " + std::to_string(k) + " has id " +
                                  std::to_string(e.id));
    }
    if (!std::isfinite(e.timestamp) || e.timestamp < t_min_ || e.timestamp > t_max_) {
      throw std::invalid_argument("event " + std::to_string(k) + " timestamp outside [t_min, t_max]");
    }
    if (!std::isfinite(e.weight) || !(e.weight > 0.0)) {
      throw std::invalid_argument("event " + std::to_string(k) + " weight must be positive");
    }
  }
}

ActivityRegion maximum_region(const Instance& inst, EventId id) {
  (void)inst.event(id);
  return {id, inst.t_min(), inst.t_max()};
}

double region_area(const ActivityRegion& r, const Event& e) {
  if (r.event_id != e.id) throw std::invalid_argument("region does not belong to event");
  const double width = e.timestamp - r.left;
  const double height = r.top - e.timestamp;
  if (width <= 0.0 || height <= 0.0) return 0.0;
  return width * height;
}

double region_volume(const ActivityRegion& r, const Event& e) {
  return e.weight * region_area(r, e);
}

ActivityDiagram::ActivityDiagram(std::shared_ptr<const Instance> instance,
                                 std::vector<ActivityRegion> regions)
    : instance_(std::move(instance)), regions_(std::move(regions)) {
  if (!instance_) throw std::invalid_argument("diagram needs an instance");
  if (regions_.size() != instance_->size()) {
    throw std::invalid_argument("diagram has " + std::to_string(regions_.size()) +
                                " regions for " + std::to_string(instance_->size()) + " events");
  }
  for (std::size_t k = 0; k < regions_.size(); ++k) {
    if (regions_[k].event_id != k) {
      throw std::invalid_argument("region at position " + std::to_string(k) + " has id " +
                                  std::to_string(regions_[k].event_id));
    }
  }
}

double diagram_volume(const ActivityDiagram& d) {
  double total = 0.0;
  for (const ActivityRegion& r : d.regions()) total += region_volume(r, d.instance().event(r.event_id));
  return total;
}

namespace {

bool interiors_overlap(const ActivityRegion& a, double ta, const ActivityRegion& b, double tb) {
  return std::max(a.left, b.left) < std::min(ta, tb) && std::max(ta, tb) < std::min(a.top, b.top);
}

std::string describe(const ActivityRegion& r, double t) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << r.left << ", " << t << "] x [" << t << ", " << r.top << "]";
  return os.str();
}

bool is_active(const ActivityRegion& r, const Event& e, const Instance& inst,
               const TimeWindowQuery& q) {
  const double t = e.timestamp;
  if (!(r.left < t && t < r.top)) return false;
  const bool left_ok = r.left < q.start || (q.start == r.left && r.left == inst.t_min());
  const bool top_ok = q.end < r.top || (q.end == r.top && r.top == inst.t_max());
  return left_ok && q.start <= t && t <= q.end && top_ok;
}

void require_window(const Instance& inst, const TimeWindowQuery& q) {
  if (!(inst.t_min() <= q.start && q.start <= q.end && q.end <= inst.t_max())) {
    std::ostringstream os;
    os.precision(17);
    os << "query (" << q.start << ", " << q.end << ") outside configuration space [" << inst.t_min()
       << ", " << inst.t_max() << "]";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

ValidationReport validate(const ActivityDiagram& d) {
  ValidationReport report;
  const Instance& inst = d.instance();
  for (const ActivityRegion& r : d.regions()) {
    const double t = inst.event(r.event_id).timestamp;
    if (!std::isfinite(r.left) || !std::isfinite(r.top) || r.left > t || r.top < t) {
      report.violations.push_back({ViolationKind::kAnchoring, r.event_id, r.event_id,
                                   "event " + std::to_string(r.event_id) + " region " +
                                       describe(r, t) + " is not anchored at its timestamp"});
    }
    if (r.left < inst.t_min() || r.top > inst.t_max()) {
      report.violations.push_back({ViolationKind::kBounds, r.event_id, r.event_id,
                                   "event " + std::to_string(r.event_id) + " region " +
                                       describe(r, t) + " leaves [t_min, t_max]"});
    }
  }
  const ConflictGraph graph = build_conflict_graph(inst);
  for (EventId i = 0; i < inst.size(); ++i) {
    for (EventId j : graph.neighbors(i)) {
      if (j <= i) continue;
      const double ti = inst.event(i).timestamp;
      const double tj = inst.event(j).timestamp;
      if (interiors_overlap(d.region(i), ti, d.region(j), tj)) {
        report.violations.push_back({ViolationKind::kOverlap, i, j,
                                     "conflicting events " + std::to_string(i) + " and " +
                                         std::to_string(j) + " overlap: " + describe(d.region(i), ti) +
                                         " vs " + describe(d.region(j), tj)});
      }
    }
  }
  return report;
}

std::vector<EventId> query(const ActivityDiagram& d, const TimeWindowQuery& q) {
  const Instance& inst = d.instance();
  require_window(inst, q);

  struct Candidate {
    EventId id;
    double volume;
  };
  std::vector<Candidate> candidates;
  for (const ActivityRegion& r : d.regions()) {
    const Event& e = inst.event(r.event_id);
    if (is_active(r, e, inst, q)) candidates.push_back({e.id, region_volume(r, e)});
  }
  // Only an invalid diagram can make this filter drop anything.
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.volume != b.volume) return a.volume > b.volume;
    return a.id < b.id;
  });
  std::vector<EventId> kept;
  for (const Candidate& c : candidates) {
    const LabelShape& shape = inst.event(c.id).shape;
    const bool clashes = std::any_of(kept.begin(), kept.end(), [&](EventId k) {
      return conflicts(shape, inst.event(k).shape);
    });
    if (!clashes) kept.push_back(c.id);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

bool containment_check(const ActivityDiagram& d, const TimeWindowQuery& outer,
                       const TimeWindowQuery& inner) {
  if (!(outer.start <= inner.start && inner.start <= inner.end && inner.end <= outer.end)) {
    throw std::invalid_argument("inner window is not contained in outer window");
  }
  const std::vector<EventId> shown_outer = query(d, outer);
  const std::vector<EventId> shown_inner = query(d, inner);
  for (EventId id : shown_outer) {
    const double t = d.instance().event(id).timestamp;
    if (t < inner.start || t > inner.end) continue;
    if (!std::binary_search(shown_inner.begin(), shown_inner.end(), id)) return false;
  }
  return true;
}

ConflictGraph::ConflictGraph(std::vector<std::vector<EventId>> adjacency)
    : adjacency_(std::move(adjacency)) {}

bool ConflictGraph::adjacent(EventId a, EventId b) const {
  const auto& row = adjacency_.at(a);
  return std::binary_search(row.begin(), row.end(), b);
}

std::size_t ConflictGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.size();
  return twice / 2;
}

ConflictGraph build_conflict_graph_serial(const Instance& inst) {
  const auto events = inst.events();
  std::vector<std::vector<EventId>> adjacency(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = 0; j < events.size(); ++j) {
      if (i != j && conflicts(events[i].shape, events[j].shape)) adjacency[i].push_back(j);
    }
  }
  return ConflictGraph(std::move(adjacency));
}

ConflictGraph build_conflict_graph(const Instance& inst) {
  const auto events = inst.events();
  const auto n = static_cast<std::ptrdiff_t>(events.size());
  std::vector<std::vector<EventId>> adjacency(events.size());
  // Rows are independent; each thread owns whole rows.
#pragma omp parallel for schedule(dynamic, 16) if (n > 256)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& row = adjacency[static_cast<std::size_t>(i)];
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      if (i != j && conflicts(events[static_cast<std::size_t>(i)].shape,
                              events[static_cast<std::size_t>(j)].shape)) {
        row.push_back(static_cast<EventId>(j));
      }
    }
  }
  return ConflictGraph(std::move(adjacency));
}

}  // namespace twl
