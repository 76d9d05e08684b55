#include "twl/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "twl/greedy.hpp"
#include "twl/io.hpp"

namespace twl {
namespace {

// Flat view of an instance for the inner loops.
struct Problem {
  std::vector<double> time;
  std::vector<double> weight;
  double t_min = 0.0;
  double t_max = 0.0;
  std::vector<ConflictConstraint> pairs;

  explicit Problem(const Instance& inst) : t_min(inst.t_min()), t_max(inst.t_max()), pairs(conflict_pairs(inst)) {
    for (const Event& e : inst.events()) {
      time.push_back(e.timestamp);
      weight.push_back(e.weight);
    }
  }

  std::size_t size() const { return time.size(); }

  // Same arithmetic as region_volume, summed in id order like diagram_volume.
  double volume(std::span<const double> left, std::span<const double> top) const {
    double total = 0.0;
    for (std::size_t k = 0; k < time.size(); ++k) {
      const double width = time[k] - left[k];
      const double height = top[k] - time[k];
      const double area = (width <= 0.0 || height <= 0.0) ? 0.0 : width * height;
      total += weight[k] * area;
    }
    return total;
  }

  void apply(const ConflictConstraint& c, Disjunct d, std::span<double> left, std::span<double> top) const {
    if (d == Disjunct::kLeft) {
      left[c.later] = std::max(left[c.later], time[c.earlier]);
    } else {
      top[c.earlier] = std::min(top[c.earlier], time[c.later]);
    }
  }
};

ActivityDiagram make_diagram(std::shared_ptr<const Instance> inst, std::span<const double> left,
                             std::span<const double> top) {
  std::vector<ActivityRegion> regions;
  regions.reserve(left.size());
  for (std::size_t k = 0; k < left.size(); ++k) regions.push_back({k, left[k], top[k]});
  return ActivityDiagram(std::move(inst), std::move(regions));
}

struct Leaf {
  double volume = -std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;

  void offer(double v, std::uint64_t idx) {
    if (v > volume || (v == volume && idx < index)) {
      volume = v;
      index = idx;
    }
  }
};

// Assignment `index` picks kTop for pair k iff bit (m - 1 - k) is set, so
// numeric order is lexicographic order over the pair list.
double evaluate_index(const Problem& p, std::uint64_t index, std::vector<double>& left,
                      std::vector<double>& top) {
  const std::size_t m = p.pairs.size();
  std::fill(left.begin(), left.end(), p.t_min);
  std::fill(top.begin(), top.end(), p.t_max);
  for (std::size_t k = 0; k < m; ++k) {
    const bool pick_top = (index >> (m - 1 - k)) & 1U;
    p.apply(p.pairs[k], pick_top ? Disjunct::kTop : Disjunct::kLeft, left, top);
  }
  return p.volume(left, top);
}

void require_exhaustive_size(const Problem& p, std::size_t cap) {
  if (p.pairs.size() > cap || p.pairs.size() > 62) {
    throw std::invalid_argument("exhaustive oracle refuses " + std::to_string(p.pairs.size()) +
                                " conflict pairs (cap " + std::to_string(cap) + ")");
  }
}

OracleResult finish_exhaustive(std::shared_ptr<const Instance> inst, const Problem& p, const Leaf& best) {
  std::vector<double> left(p.size()), top(p.size());
  evaluate_index(p, best.index, left, top);
  ActivityDiagram diagram = make_diagram(std::move(inst), left, top);
  const double volume = diagram_volume(diagram);
  return {std::move(diagram), volume, true, std::uint64_t{1} << p.pairs.size()};
}

OracleResult exhaustive_serial(std::shared_ptr<const Instance> inst, std::size_t cap) {
  const Problem p(*inst);
  require_exhaustive_size(p, cap);
  const std::uint64_t total = std::uint64_t{1} << p.pairs.size();
  std::vector<double> left(p.size()), top(p.size());
  Leaf best;
  for (std::uint64_t idx = 0; idx < total; ++idx) best.offer(evaluate_index(p, idx, left, top), idx);
  return finish_exhaustive(std::move(inst), p, best);
}

OracleResult exhaustive_parallel(std::shared_ptr<const Instance> inst, std::size_t cap) {
  const Problem p(*inst);
  require_exhaustive_size(p, cap);
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << p.pairs.size());
  Leaf best;
#pragma omp parallel
  {
    std::vector<double> left(p.size()), top(p.size());
    Leaf local;
#pragma omp for schedule(static) nowait
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const auto u = static_cast<std::uint64_t>(idx);
      local.offer(evaluate_index(p, u, left, top), u);
    }
#pragma omp critical(twl_exhaustive_merge)
    {
      if (local.volume > -std::numeric_limits<double>::infinity()) best.offer(local.volume, local.index);
    }
  }
  return finish_exhaustive(std::move(inst), p, best);
}

class BranchAndBound {
 public:
  BranchAndBound(std::shared_ptr<const Instance> inst, double budget_seconds)
      : inst_(std::move(inst)),
        p_(*inst_),
        left_(p_.size(), p_.t_min),
        top_(p_.size(), p_.t_max),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(budget_seconds))) {
    // High-impact pairs first: decreasing product of the untrimmed volumes.
    std::vector<double> full(p_.size());
    for (std::size_t k = 0; k < p_.size(); ++k) {
      full[k] = p_.weight[k] * (p_.time[k] - p_.t_min) * (p_.t_max - p_.time[k]);
    }
    order_.resize(p_.pairs.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const auto& pa = p_.pairs[a];
      const auto& pb = p_.pairs[b];
      return full[pa.earlier] * full[pa.later] > full[pb.earlier] * full[pb.later];
    });
  }

  OracleResult run() {
    // The greedy diagram is a valid starting incumbent.
    GreedyResult seed = solve_greedy(inst_);
    best_volume_ = diagram_volume(seed.diagram);
    best_left_.resize(p_.size());
    best_top_.resize(p_.size());
    for (const ActivityRegion& r : seed.diagram.regions()) {
      best_left_[r.event_id] = r.left;
      best_top_[r.event_id] = r.top;
    }
    search(0, p_.volume(left_, top_));
    ActivityDiagram diagram = make_diagram(inst_, best_left_, best_top_);
    const double volume = diagram_volume(diagram);
    return {std::move(diagram), volume, !out_of_time_, nodes_};
  }

 private:
  bool worth_exploring(double bound) const {
    return bound > best_volume_ || (bound == best_volume_ && !leaf_found_);
  }

  bool budget_exhausted() {
    if (out_of_time_) return true;
    if ((nodes_ & 1023U) == 0 && std::chrono::steady_clock::now() > deadline_) out_of_time_ = true;
    return out_of_time_;
  }

  void search(std::size_t depth, double bound) {
    ++nodes_;
    if (budget_exhausted()) return;
    if (depth == order_.size()) {
      if (worth_exploring(bound)) {
        best_volume_ = bound;
        best_left_ = left_;
        best_top_ = top_;
        leaf_found_ = true;
      }
      return;
    }
    const ConflictConstraint& c = p_.pairs[order_[depth]];
    const double t_earlier = p_.time[c.earlier];
    const double t_later = p_.time[c.later];
    // Already separated by earlier decisions: nothing to branch on.
    if (left_[c.later] >= t_earlier || top_[c.earlier] <= t_later) {
      search(depth + 1, bound);
      return;
    }
    {
      const double saved = left_[c.later];
      left_[c.later] = t_earlier;
      const double b = p_.volume(left_, top_);
      if (worth_exploring(b)) search(depth + 1, b);
      left_[c.later] = saved;
    }
    {
      const double saved = top_[c.earlier];
      top_[c.earlier] = t_later;
      const double b = p_.volume(left_, top_);
      if (worth_exploring(b)) search(depth + 1, b);
      top_[c.earlier] = saved;
    }
  }

  std::shared_ptr<const Instance> inst_;
  Problem p_;
  std::vector<std::size_t> order_;
  std::vector<double> left_;
  std::vector<double> top_;
  std::vector<double> best_left_;
  std::vector<double> best_top_;
  double best_volume_ = 0.0;
  bool leaf_found_ = false;
  bool out_of_time_ = false;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

std::vector<ConflictConstraint> conflict_pairs(const Instance& inst) {
  const ConflictGraph graph = build_conflict_graph(inst);
  std::vector<ConflictConstraint> pairs;
  for (EventId i = 0; i < inst.size(); ++i) {
    for (EventId j : graph.neighbors(i)) {
      if (j <= i) continue;
      const double ti = inst.event(i).timestamp;
      const double tj = inst.event(j).timestamp;
      pairs.push_back(tj < ti ? ConflictConstraint{j, i} : ConflictConstraint{i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const ConflictConstraint& a, const ConflictConstraint& b) {
    return a.earlier != b.earlier ? a.earlier < b.earlier : a.later < b.later;
  });
  return pairs;
}

AssignmentSolution optimal_under_assignment(std::shared_ptr<const Instance> inst,
                                            std::span<const ConflictConstraint> pairs,
                                            std::span<const Disjunct> choice) {
  if (!inst) throw std::invalid_argument("optimal_under_assignment needs an instance");
  if (pairs.size() != choice.size()) throw std::invalid_argument("one disjunct per pair required");
  std::vector<double> left(inst->size(), inst->t_min());
  std::vector<double> top(inst->size(), inst->t_max());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const ConflictConstraint& c = pairs[k];
    const double te = inst->event(c.earlier).timestamp;
    const double tl = inst->event(c.later).timestamp;
    if (te > tl || (te == tl && c.earlier > c.later)) {
      throw std::invalid_argument("conflict constraint is not normalized");
    }
    if (choice[k] == Disjunct::kLeft) {
      left[c.later] = std::max(left[c.later], te);
    } else {
      top[c.earlier] = std::min(top[c.earlier], tl);
    }
  }
  ActivityDiagram diagram = make_diagram(std::move(inst), left, top);
  const double volume = diagram_volume(diagram);
  return {std::move(diagram), volume};
}

OracleResult solve_exhaustive_serial(std::shared_ptr<const Instance> inst) {
  if (!inst) throw std::invalid_argument("oracle needs an instance");
  return exhaustive_serial(std::move(inst), 62);
}

OracleResult solve_exhaustive_parallel(std::shared_ptr<const Instance> inst) {
  if (!inst) throw std::invalid_argument("oracle needs an instance");
  return exhaustive_parallel(std::move(inst), 62);
}

OracleResult solve_optimal(std::shared_ptr<const Instance> inst, const OracleConfig& config) {
  if (!inst) throw std::invalid_argument("oracle needs an instance");
  if (config.mode == OracleMode::kExhaustive) {
    return config.parallel ? exhaustive_parallel(std::move(inst), config.pair_cap)
                           : exhaustive_serial(std::move(inst), config.pair_cap);
  }
  return BranchAndBound(std::move(inst), config.time_budget_seconds).run();
}

void export_reference(const ActivityDiagram& diagram, const std::filesystem::path& path,
                      const std::string& source) {
  nlohmann::json j = diagram_to_json(diagram, nlohmann::json(instance_to_json(diagram.instance())));
  j["source"] = source;
  write_json_file(path, j);
}

ReferenceRecord load_reference(const std::filesystem::path& path) {
  const nlohmann::json j = read_json_file(path);
  ActivityDiagram diagram = diagram_from_json(j, path.parent_path(), nullptr, /*strict=*/true);
  const ValidationReport report = validate(diagram);
  if (!report.ok()) {
    throw SchemaError(path.string() + ": reference diagram is invalid: " + report.violations.front().message);
  }
  const double volume = diagram_volume(diagram);
  std::string source = j.contains("source") && j["source"].is_string() ? j["source"].get<std::string>() : "";
  return {std::move(diagram), volume, std::move(source)};
}

}  // namespace twl
