#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "twl/model.hpp"

namespace twl {

// A conflicting pair ordered so that t(earlier) <= t(later), ties by id.
// Two anchored regions of such a pair have disjoint interiors iff
// left(later) >= t(earlier) or top(earlier) <= t(later).
struct ConflictConstraint {
  EventId earlier = 0;
  EventId later = 0;

  friend bool operator==(const ConflictConstraint&, const ConflictConstraint&) = default;
};

enum class Disjunct : std::uint8_t {
  kLeft,  // left(later) >= t(earlier)
  kTop,   // top(earlier) <= t(later)
};

/// All conflicting pairs, normalized and sorted by (earlier, later).
std::vector<ConflictConstraint> conflict_pairs(const Instance& inst);

struct AssignmentSolution {
  ActivityDiagram diagram;
  double volume = 0.0;
};

/// Pushes every left bound down and every top bound up as far as the chosen
/// disjuncts allow. The result is the best diagram satisfying them.
AssignmentSolution optimal_under_assignment(std::shared_ptr<const Instance> inst,
                                            std::span<const ConflictConstraint> pairs,
                                            std::span<const Disjunct> choice);

enum class OracleMode { kExhaustive, kBranchAndBound };

struct OracleConfig {
  OracleMode mode = OracleMode::kBranchAndBound;
  std::size_t pair_cap = 20;       // exhaustive mode refuses more pairs
  double time_budget_seconds = 60.0;
  bool parallel = true;            // exhaustive mode only
};

struct OracleResult {
  ActivityDiagram diagram;
  double volume = 0.0;
  bool proven_optimal = false;
  std::uint64_t nodes = 0;  // assignments (exhaustive) or search nodes (branch-and-bound)
};

/// Exact optimum over all valid anchored-rectangle diagrams. Branch-and-bound
/// returns its incumbent with proven_optimal == false once the budget runs
/// out. Ties between optimal diagrams resolve to the lexicographically least
/// assignment in the mode's pair order.
OracleResult solve_optimal(std::shared_ptr<const Instance> inst, const OracleConfig& config = {});

// Kernels behind the exhaustive mode, exposed for tests and benchmarks.
OracleResult solve_exhaustive_serial(std::shared_ptr<const Instance> inst);
OracleResult solve_exhaustive_parallel(std::shared_ptr<const Instance> inst);

struct ReferenceRecord {
  ActivityDiagram diagram;
  double volume = 0.0;
  std::string source;
};

/// Writes a diagram together with its inline instance so that it can be
/// checked back in later.
void export_reference(const ActivityDiagram& diagram, const std::filesystem::path& path,
                      const std::string& source);

/// Loads a reference record; throws if it does not validate or its stored
/// volume disagrees with the recomputed one.
ReferenceRecord load_reference(const std::filesystem::path& path);

}  // namespace twl
