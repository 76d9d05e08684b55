#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twl/model.hpp"
#include "twl/oracle.hpp"

namespace twl {

enum class InterferenceMode { kExact, kGreedyLowerBound };

struct Interference {
  std::size_t a = 0;
  bool exact = true;
};

/// Largest conflict-free subset of any closed conflict neighbourhood (an event
/// conflicts with itself), so a >= 1 whenever an event exists. Exact mode
/// throws std::length_error if some open neighbourhood exceeds `exact_limit`.
Interference degree_of_interference(const Instance& inst, InterferenceMode mode = InterferenceMode::kExact,
                                    std::size_t exact_limit = 24);

/// max weight / min weight. Throws on an empty instance.
double degree_of_unbalance(const Instance& inst);

struct InstanceStats {
  std::size_t n = 0;
  std::size_t conflict_pair_count = 0;
  Interference interference;
  double unbalance = 1.0;  // 1 for an empty instance
};

/// Exact interference when every neighbourhood is small enough, otherwise the
/// greedy lower bound (interference.exact == false).
InstanceStats instance_stats(const Instance& inst);

// Approximation bound a * (2 ln 2 + 4 ln b + 2).
double bound_a_log_b(double a, double b);

struct RatioReport {
  InstanceStats stats;
  double greedy_volume = 0.0;
  double first_pick_volume = 0.0;
  double optimal_volume = 0.0;
  bool proven = false;
  std::optional<double> ratio;       // optimal / greedy; a lower bound unless proven
  double bound_alogb = 0.0;
  std::optional<double> bound_2a;    // only for uniform weights
  double bound_n = 0.0;
  std::vector<std::string> violations;

  bool bounds_hold() const { return violations.empty(); }
};

/// Runs greedy and the oracle and checks the proven bounds. A listed
/// violation can only come from a bug.
RatioReport ratio_report(std::shared_ptr<const Instance> inst, const OracleConfig& config);

/// One report per instance, computed in parallel.
std::vector<RatioReport> ratio_reports(std::span<const std::shared_ptr<const Instance>> instances,
                                       const OracleConfig& config);
std::vector<RatioReport> ratio_reports_serial(std::span<const std::shared_ptr<const Instance>> instances,
                                              const OracleConfig& config);

std::string csv_header();
std::string csv_row(const RatioReport& r);
std::string summary(const RatioReport& r);

/// Shortest text that parses back to the same double.
std::string format_number(double v);

}  // namespace twl
