#include "twl/analysis.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "twl/greedy.hpp"

namespace twl {
namespace {

constexpr double kBoundTolerance = 1e-9;

// Maximum independent set of the subgraph induced by `mask`; `adj[v]` holds
// v's neighbours as a bitmask over the same local indices.
std::size_t max_independent(std::uint32_t mask, const std::vector<std::uint32_t>& adj) {
  if (mask == 0) return 0;
  const int v = std::countr_zero(mask);
  const std::uint32_t rest = mask & ~(std::uint32_t{1} << v);
  const std::uint32_t nbrs = adj[static_cast<std::size_t>(v)] & rest;
  const std::size_t take = 1 + max_independent(rest & ~nbrs, adj);
  if (nbrs == 0) return take;
  if (take >= static_cast<std::size_t>(std::popcount(rest))) return take;
  return std::max(take, max_independent(rest, adj));
}

std::size_t greedy_independent(std::span<const EventId> members, const ConflictGraph& graph) {
  // Minimum-degree first within the member set.
  std::vector<EventId> pool(members.begin(), members.end());
  std::size_t count = 0;
  while (!pool.empty()) {
    auto degree = [&](EventId v) {
      return std::count_if(pool.begin(), pool.end(), [&](EventId u) { return u != v && graph.adjacent(v, u); });
    };
    const auto pick = *std::min_element(pool.begin(), pool.end(), [&](EventId x, EventId y) {
      const auto dx = degree(x), dy = degree(y);
      return dx != dy ? dx < dy : x < y;
    });
    ++count;
    std::erase_if(pool, [&](EventId u) { return u == pick || graph.adjacent(pick, u); });
  }
  return count;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

}  // namespace

Interference degree_of_interference(const Instance& inst, InterferenceMode mode, std::size_t exact_limit) {
  const ConflictGraph graph = build_conflict_graph(inst);
  Interference result{0, mode == InterferenceMode::kExact};
  exact_limit = std::min<std::size_t>(exact_limit, 31);
  for (EventId i = 0; i < inst.size(); ++i) {
    const auto nbrs = graph.neighbors(i);
    std::size_t best = 0;
    if (mode == InterferenceMode::kExact) {
      if (nbrs.size() > exact_limit) {
        throw std::length_error("conflict neighbourhood of event " + std::to_string(i) + " has " +
                                std::to_string(nbrs.size()) + " events; exact limit is " +
                                std::to_string(exact_limit));
      }
      std::vector<std::uint32_t> adj(nbrs.size(), 0);
      for (std::size_t x = 0; x < nbrs.size(); ++x) {
        for (std::size_t y = 0; y < nbrs.size(); ++y) {
          if (x != y && graph.adjacent(nbrs[x], nbrs[y])) adj[x] |= std::uint32_t{1} << y;
        }
      }
      const std::uint32_t all = nbrs.empty() ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << nbrs.size()) - 1);
      best = max_independent(all, adj);
    } else {
      best = greedy_independent(nbrs, graph);
    }
    // The event itself is a conflict-free subset of its closed neighbourhood.
    result.a = std::max(result.a, std::max<std::size_t>(best, 1));
  }
  return result;
}

double degree_of_unbalance(const Instance& inst) {
  if (inst.empty()) throw std::invalid_argument("degree of unbalance is undefined for an empty instance");
  const auto [lo, hi] = std::minmax_element(inst.events().begin(), inst.events().end(),
                                            [](const Event& x, const Event& y) { return x.weight < y.weight; });
  return hi->weight / lo->weight;
}

InstanceStats instance_stats(const Instance& inst) {
  InstanceStats s;
  s.n = inst.size();
  s.conflict_pair_count = build_conflict_graph(inst).edge_count();
  try {
    s.interference = degree_of_interference(inst, InterferenceMode::kExact);
  } catch (const std::length_error&) {
    s.interference = degree_of_interference(inst, InterferenceMode::kGreedyLowerBound);
  }
  s.unbalance = inst.empty() ? 1.0 : degree_of_unbalance(inst);
  return s;
}

double bound_a_log_b(double a, double b) {
  return a * (2 * std::numbers::ln2 + 4 * std::log(b) + 2);
}

RatioReport ratio_report(std::shared_ptr<const Instance> inst, const OracleConfig& config) {
  RatioReport r;
  r.stats = instance_stats(*inst);
  const GreedyResult greedy = solve_greedy(inst);
  r.greedy_volume = diagram_volume(greedy.diagram);
  r.first_pick_volume = greedy.trace.empty() ? 0.0 : greedy.trace.front().volume;
  const OracleResult opt = solve_optimal(inst, config);
  r.optimal_volume = opt.volume;
  r.proven = opt.proven_optimal;

  const auto a = static_cast<double>(r.stats.interference.a);
  const double b = r.stats.unbalance;
  r.bound_alogb = bound_a_log_b(a, b);
  if (b == 1.0) r.bound_2a = 2 * a;
  r.bound_n = static_cast<double>(r.stats.n);
  if (r.greedy_volume > 0.0) r.ratio = r.optimal_volume / r.greedy_volume;

  if (r.optimal_volume < r.greedy_volume) {
    r.violations.push_back("oracle volume " + format_number(r.optimal_volume) + " below greedy volume " +
                           format_number(r.greedy_volume));
  }
  if (r.proven) {
    for (const ActivityRegion& region : opt.diagram.regions()) {
      const double v = region_volume(region, inst->event(region.event_id));
      if (v > r.first_pick_volume * (1 + kBoundTolerance)) {
        r.violations.push_back("optimal region of event " + std::to_string(region.event_id) +
                               " exceeds greedy's first pick");
      }
    }
  }
  if (r.ratio && r.stats.interference.exact) {
    const double cap = std::min(r.bound_alogb, r.bound_n);
    if (*r.ratio > cap * (1 + kBoundTolerance)) {
      r.violations.push_back("ratio " + format_number(*r.ratio) + " exceeds min(a(2ln2+4lnb+2), n) = " +
                             format_number(cap));
    }
    if (r.bound_2a && *r.ratio > *r.bound_2a * (1 + kBoundTolerance)) {
      r.violations.push_back("ratio " + format_number(*r.ratio) + " exceeds 2a = " + format_number(*r.bound_2a));
    }
  }
  return r;
}

std::vector<RatioReport> ratio_reports_serial(std::span<const std::shared_ptr<const Instance>> instances,
                                              const OracleConfig& config) {
  std::vector<RatioReport> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(ratio_report(inst, config));
  return out;
}

std::vector<RatioReport> ratio_reports(std::span<const std::shared_ptr<const Instance>> instances,
                                       const OracleConfig& config) {
  OracleConfig inner = config;
  inner.parallel = false;  // parallelism lives at the instance level here
  std::vector<RatioReport> out(instances.size());
  const auto count = static_cast<std::ptrdiff_t>(instances.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = ratio_report(instances[static_cast<std::size_t>(k)], inner);
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_header() {
  return "n,pairs,a,b,greedy,optimal,proven,ratio,bound_alogb,bound_2a,bound_n";
}

std::string csv_row(const RatioReport& r) {
  std::ostringstream os;
  os << r.stats.n << ',' << r.stats.conflict_pair_count << ',' << r.stats.interference.a
     << (r.stats.interference.exact ? "" : "+") << ',' << format_number(r.stats.unbalance) << ','
     << format_number(r.greedy_volume) << ',' << format_number(r.optimal_volume) << ','
     << (r.proven ? "true" : "false") << ',' << fmt_opt(r.ratio) << ',' << format_number(r.bound_alogb) << ','
     << fmt_opt(r.bound_2a) << ',' << format_number(r.bound_n);
  return os.str();
}

std::string summary(const RatioReport& r) {
  std::ostringstream os;
  os << "n = " << r.stats.n << ", conflict pairs = " << r.stats.conflict_pair_count
     << ", a = " << r.stats.interference.a << (r.stats.interference.exact ? "" : " (greedy lower bound)")
     << ", b = " << format_number(r.stats.unbalance) << '\n'
     << "greedy volume  = " << format_number(r.greedy_volume) << '\n'
     << "optimal volume = " << format_number(r.optimal_volume) << (r.proven ? " (proven)" : " (not proven)") << '\n'
     << "ratio          = " << fmt_opt(r.ratio) << (r.ratio && !r.proven ? " (lower bound)" : "") << '\n'
     << "bounds: a(2ln2+4lnb+2) = " << format_number(r.bound_alogb) << ", 2a = " << fmt_opt(r.bound_2a)
     << ", n = " << format_number(r.bound_n) << '\n';
  for (const std::string& v : r.violations) os << "BOUND VIOLATION: " << v << '\n';
  return os.str();
}

}  // namespace twl
