#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>

#include "support/test_oracles.hpp"
#include "twl/generators.hpp"
#include "twl/greedy.hpp"
#include "twl/io.hpp"
#include "twl/oracle.hpp"

using namespace twl;

namespace {

constexpr double kEps = 1.0 / 64.0;

std::shared_ptr<const Instance> shared(Instance inst) { return std::make_shared<const Instance>(std::move(inst)); }

bool has_pair(const std::vector<ConflictConstraint>& pairs, EventId a, EventId b) {
  return std::any_of(pairs.begin(), pairs.end(), [&](const ConflictConstraint& c) {
    return (c.earlier == a && c.later == b) || (c.earlier == b && c.later == a);
  });
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("twl_oracle_" + name);
}

}  // namespace

TEST_CASE("conflict pairs") {
  SUBCASE("no overlapping labels") {
    auto inst = Instance({{0, LabelShape::square(0, 0, 1), 1, 1}, {1, LabelShape::square(1, 0, 1), 2, 1}}, 0, 3);
    CHECK(conflict_pairs(inst).empty());
  }
  SUBCASE("table1") {
    const auto pairs = conflict_pairs(gen_table1());
    for (EventId k : {0, 1, 2, 3, 5, 6, 7, 8, 9, 10}) CHECK(has_pair(pairs, 4, k));
    CHECK_FALSE(has_pair(pairs, 4, 11));
    CHECK(has_pair(pairs, 3, 9));
    for (EventId k : {0, 1, 2}) CHECK_FALSE(has_pair(pairs, k, 9));
    const Instance inst = gen_table1();
    for (const ConflictConstraint& c : pairs) {
      const double te = inst.event(c.earlier).timestamp, tl = inst.event(c.later).timestamp;
      CHECK((te < tl || (te == tl && c.earlier < c.later)));
    }
  }
}

TEST_CASE("optimal under assignment") {
  SUBCASE("no constraints gives maximum regions") {
    auto inst = shared(Instance({{0, LabelShape::square(0, 0, 1), 1, 1}, {1, LabelShape::square(3, 0, 1), 2, 1}}, 0, 3));
    const AssignmentSolution s = optimal_under_assignment(inst, {}, {});
    CHECK(s.diagram.region(0) == maximum_region(*inst, 0));
    CHECK(s.diagram.region(1) == maximum_region(*inst, 1));
  }
  SUBCASE("choosing TOP caps the earlier event") {
    auto inst = shared(Instance({{0, LabelShape::square(0, 0, 1), 1, 1}, {1, LabelShape::square(0, 0, 1), 2, 1}}, 0, 3));
    const auto pairs = conflict_pairs(*inst);
    const std::vector<Disjunct> top{Disjunct::kTop};
    const AssignmentSolution s = optimal_under_assignment(inst, pairs, top);
    CHECK(s.diagram.region(0) == ActivityRegion{0, 0, 2});
    CHECK(s.diagram.region(1) == maximum_region(*inst, 1));
    CHECK(validate(s.diagram).ok());
  }
  SUBCASE("half split on the powers family") {
    auto inst = shared(gen_powers(16));
    const auto pairs = conflict_pairs(*inst);
    // Every pair (earlier, later) separated by the later event's left bound.
    const std::vector<Disjunct> left(pairs.size(), Disjunct::kLeft);
    const AssignmentSolution s = optimal_under_assignment(inst, pairs, left);
    CHECK(s.volume == 632.0);
  }
  SUBCASE("mismatched sizes") {
    auto inst = shared(gen_powers(4));
    const auto pairs = conflict_pairs(*inst);
    CHECK_THROWS_AS(optimal_under_assignment(inst, pairs, {}), std::invalid_argument);
  }
}

TEST_CASE("solve_optimal examples") {
  SUBCASE("single event") {
    auto inst = shared(Instance({{0, LabelShape::disk(0, 0, 1), 2, 3}}, 0, 5));
    for (OracleMode mode : {OracleMode::kExhaustive, OracleMode::kBranchAndBound}) {
      OracleConfig config;
      config.mode = mode;
      const OracleResult r = solve_optimal(inst, config);
      CHECK(r.proven_optimal);
      CHECK(r.diagram.region(0) == maximum_region(*inst, 0));
      CHECK(r.volume == 3.0 * 2 * 3);
    }
  }
  SUBCASE("empty instance") {
    auto inst = shared(Instance({}, 0, 1));
    CHECK(solve_optimal(inst).volume == 0.0);
    OracleConfig config;
    config.mode = OracleMode::kExhaustive;
    CHECK(solve_optimal(inst, config).volume == 0.0);
  }
  SUBCASE("powers b = 16") {
    auto inst = shared(gen_powers(16));
    const OracleResult r = solve_optimal(inst);
    CHECK(r.proven_optimal);
    CHECK(r.volume >= 632.0);
    CHECK(r.volume / diagram_volume(solve_greedy(inst).diagram) >= 2.0);
    CHECK(validate(r.diagram).ok());
  }
  SUBCASE("table1 by branch-and-bound") {
    OracleConfig config;
    config.time_budget_seconds = 60;
    const OracleResult r = solve_optimal(shared(gen_table1(kEps)), config);
    CHECK(r.volume >= 900 + 26 * kEps - 7 * kEps * kEps);
    CHECK(validate(r.diagram).ok());
  }
  SUBCASE("exhaustive mode refuses too many pairs") {
    OracleConfig config;
    config.mode = OracleMode::kExhaustive;
    CHECK_THROWS_AS(solve_optimal(shared(gen_table1()), config), std::invalid_argument);
  }
  SUBCASE("an exhausted budget returns the incumbent unproven") {
    OracleConfig config;
    config.time_budget_seconds = 0.0;
    auto inst = shared(gen_refined(4, 4));
    const OracleResult r = solve_optimal(inst, config);
    CHECK_FALSE(r.proven_optimal);
    CHECK(validate(r.diagram).ok());
    CHECK(r.volume >= diagram_volume(solve_greedy(inst).diagram));
  }
}

TEST_CASE("oracle modes agree and dominate greedy") {
  std::uint64_t seed = 1;
  int checked = 0;
  for (int k = 0; k < 220; ++k) {
    RandomSpec spec;
    spec.n = 3 + static_cast<std::size_t>(k % 6);
    spec.family = static_cast<ShapeFamily>(k % 5);
    spec.weight_max = k % 2 ? 1.0 : 6.0;
    spec.t_max = 10;
    spec.integer_times = k % 3 == 0;
    spec.extent = 2.5;
    auto inst = testing::small_random_instance(spec, 12, seed);
    INFO("seed " << seed - 1);
    OracleConfig exhaustive;
    exhaustive.mode = OracleMode::kExhaustive;
    const OracleResult ex = solve_optimal(inst, exhaustive);
    const OracleResult bb = solve_optimal(inst, {});
    REQUIRE(bb.proven_optimal);
    REQUIRE(ex.volume == bb.volume);
    REQUIRE(validate(ex.diagram).ok());
    REQUIRE(validate(bb.diagram).ok());
    REQUIRE(ex.volume >= diagram_volume(solve_greedy(inst).diagram));

    // Serial and parallel enumeration are bit-identical.
    const OracleResult serial = solve_exhaustive_serial(inst);
    REQUIRE(serial.volume == ex.volume);
    for (EventId id = 0; id < inst->size(); ++id) REQUIRE(serial.diagram.region(id) == ex.diagram.region(id));
    ++checked;
  }
  CHECK(checked == 220);
}

TEST_CASE("oracle matches an independent grid brute force") {
  std::uint64_t seed = 1000;
  for (int k = 0; k < 40; ++k) {
    RandomSpec spec;
    spec.n = 4 + static_cast<std::size_t>(k % 3);
    spec.family = k % 2 ? ShapeFamily::kUnitDisk : ShapeFamily::kRectangle;
    spec.weight_max = 3;
    spec.extent = 2;
    auto inst = testing::small_random_instance(spec, 10, seed);
    const double brute = testing::GridBruteForce(*inst).solve();
    CHECK(solve_exhaustive_serial(inst).volume == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("oracle solutions are locally maximal") {
  // With every region non-degenerate, each bound sits against an active
  // constraint, so growing any side must create an overlap.
  std::uint64_t seed = 77;
  int checked = 0;
  for (int k = 0; k < 80; ++k) {
    RandomSpec spec;
    spec.n = 6;
    spec.weight_max = 2;
    spec.t_max = 10;
    auto inst = testing::small_random_instance(spec, 12, seed);
    const OracleResult r = solve_exhaustive_serial(inst);
    bool degenerate = false;
    for (EventId id = 0; id < inst->size(); ++id)
      degenerate = degenerate || region_area(r.diagram.region(id), inst->event(id)) == 0.0;
    if (degenerate) continue;
    ++checked;
    for (EventId id = 0; id < inst->size(); ++id) {
      const ActivityRegion region = r.diagram.region(id);
      for (int side = 0; side < 2; ++side) {
        std::vector<ActivityRegion> regions(r.diagram.regions().begin(), r.diagram.regions().end());
        if (side == 0) {
          if (region.left == inst->t_min()) continue;
          regions[id].left = std::max(region.left - 1e-6, inst->t_min());
        } else {
          if (region.top == inst->t_max()) continue;
          regions[id].top = std::min(region.top + 1e-6, inst->t_max());
        }
        CHECK_FALSE(validate(ActivityDiagram(inst, regions)).ok());
      }
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("oracle beats or matches the hand-built references") {
  CHECK(solve_optimal(shared(gen_powers(8))).volume >= diagram_volume(gen_powers_reference(8)));
  CHECK(solve_optimal(shared(gen_refined(2, 3))).volume >= diagram_volume(gen_refined_reference(2, 3)));
}

TEST_CASE("reference records") {
  SUBCASE("powers reference round-trips") {
    const ActivityDiagram ref = gen_powers_reference(16);
    const auto path = temp_file("powers16.json");
    export_reference(ref, path, "powers b=16 half split");
    const ReferenceRecord back = load_reference(path);
    CHECK(back.volume == diagram_volume(ref));
    CHECK(back.source == "powers b=16 half split");
    CHECK(back.diagram.instance() == ref.instance());
  }
  SUBCASE("table1 oracle solution re-validates") {
    const OracleResult r = solve_optimal(shared(gen_table1()));
    const auto path = temp_file("table1_opt.json");
    export_reference(r.diagram, path, "table1 optimum");
    const ReferenceRecord back = load_reference(path);
    CHECK(validate(back.diagram).ok());
    CHECK(back.volume == r.volume);
  }
  SUBCASE("corrupted record is rejected") {
    const auto path = temp_file("corrupt.json");
    export_reference(gen_powers_reference(4), path, "corrupt me");
    nlohmann::json j = read_json_file(path);
    j["regions"][1]["u"] = 17.0;  // beyond t_max = 16
    write_json_file(path, j);
    CHECK_THROWS_AS(load_reference(path), SchemaError);
  }
  SUBCASE("overlapping record is rejected") {
    const auto path = temp_file("overlap.json");
    export_reference(gen_powers_reference(4), path, "overlap");
    nlohmann::json j = read_json_file(path);
    j["regions"][1]["l"] = 0.0;  // now overlaps event 0
    j["volume"] = 0.5 * 2 * 14 + (1.0 / 3) * 4 * 12;
    write_json_file(path, j);
    CHECK_THROWS_AS(load_reference(path), SchemaError);
  }
}
