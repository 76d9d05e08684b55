#include <doctest.h>

#include <stdexcept>

#include <charconv>
#include <cmath>
#include <limits>
#include <random>

#include "support/test_oracles.hpp"
#include "twl/analysis.hpp"
#include "twl/generators.hpp"
#include "twl/greedy.hpp"

using namespace twl;

namespace {

std::shared_ptr<const Instance> shared(Instance inst) { return std::make_shared<const Instance>(std::move(inst)); }

}  // namespace

TEST_CASE("degree of interference") {
  SUBCASE("no conflicts") {
    const Instance inst({{0, LabelShape::square(0, 0, 1), 1, 1}, {1, LabelShape::square(5, 0, 1), 1, 1}}, 0, 2);
    CHECK(degree_of_interference(inst).a == 1);
  }
  SUBCASE("empty instance") { CHECK(degree_of_interference(Instance({}, 0, 1)).a == 0); }
  SUBCASE("refined family") {
    CHECK(degree_of_interference(gen_refined(3, 2)).a == 3);
    CHECK(degree_of_interference(gen_refined(4, 4)).a == 4);
    CHECK(degree_of_interference(gen_powers(16)).a == 1);
  }
  SUBCASE("unit squares never exceed four") {
    std::uint64_t seed = 5;
    for (int k = 0; k < 200; ++k) {
      RandomSpec spec;
      spec.seed = seed++;
      spec.n = 25;
      const Interference i = degree_of_interference(gen_random(spec));
      CHECK(i.exact);
      CHECK(i.a <= 4);
    }
  }
  SUBCASE("unit disks never exceed five") {
    std::uint64_t seed = 9;
    for (int k = 0; k < 100; ++k) {
      RandomSpec spec;
      spec.seed = seed++;
      spec.n = 25;
      spec.family = ShapeFamily::kUnitDisk;
      CHECK(degree_of_interference(gen_random(spec)).a <= 5);
    }
  }
  SUBCASE("greedy lower bound never exceeds the exact value") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      RandomSpec spec;
      spec.seed = seed;
      spec.n = 20;
      spec.family = ShapeFamily::kMixed;
      const Instance inst = gen_random(spec);
      const Interference lower = degree_of_interference(inst, InterferenceMode::kGreedyLowerBound);
      CHECK_FALSE(lower.exact);
      CHECK(lower.a >= 1);
      CHECK(lower.a <= degree_of_interference(inst).a);
    }
  }
  SUBCASE("exact mode refuses huge neighbourhoods") {
    std::vector<Event> events;
    for (EventId id = 0; id < 30; ++id) events.push_back({id, LabelShape::square(0, 0, 1), 1.0, 1.0});
    const Instance inst(events, 0, 2);
    CHECK_THROWS_AS(degree_of_interference(inst, InterferenceMode::kExact, 24), std::length_error);
    const InstanceStats stats = instance_stats(inst);
    CHECK_FALSE(stats.interference.exact);
    CHECK(stats.interference.a == 1);
  }
}

TEST_CASE("degree of unbalance") {
  CHECK(degree_of_unbalance(gen_powers(16)) == 7.5);
  CHECK(degree_of_unbalance(gen_table1()) == 1.0);
  CHECK_THROWS(degree_of_unbalance(Instance({}, 0, 1)));
  CHECK(instance_stats(Instance({}, 0, 1)).unbalance == 1.0);
}

TEST_CASE("bound formula") {
  CHECK(bound_a_log_b(1, 1) == doctest::Approx(2 * std::log(2.0) + 2));
  CHECK(bound_a_log_b(3, 16) == doctest::Approx(3 * (2 * std::log(2.0) + 4 * std::log(16.0) + 2)));
}

TEST_CASE("ratio reports") {
  SUBCASE("table1") {
    const RatioReport r = ratio_report(shared(gen_table1()), {});
    CHECK(r.proven);
    CHECK(r.stats.n == 15);
    CHECK(r.stats.interference.a == 4);
    CHECK(r.stats.unbalance == 1.0);
    REQUIRE(r.bound_2a);
    CHECK(*r.bound_2a == 8.0);
    REQUIRE(r.ratio);
    CHECK(*r.ratio >= 4.31);
    CHECK(r.bounds_hold());
  }
  SUBCASE("powers") {
    const RatioReport r = ratio_report(shared(gen_powers(16)), {});
    CHECK(r.greedy_volume == 280.0);
    CHECK(r.optimal_volume >= 632.0);
    CHECK_FALSE(r.bound_2a);
    CHECK(r.bound_n == 4.0);
    CHECK(r.bounds_hold());
  }
  SUBCASE("empty instance has no ratio") {
    const RatioReport r = ratio_report(shared(Instance({}, 0, 1)), {});
    CHECK_FALSE(r.ratio);
    CHECK(r.bounds_hold());
    CHECK(csv_row(r).find("n/a") != std::string::npos);
  }
  SUBCASE("first pick is dominated by greedy") {
    std::uint64_t seed = 31;
    for (int k = 0; k < 50; ++k) {
      RandomSpec spec;
      spec.n = 7;
      spec.weight_max = 5;
      const RatioReport r = ratio_report(testing::small_random_instance(spec, 12, seed), {});
      CHECK(r.first_pick_volume <= r.greedy_volume);
      CHECK(r.greedy_volume <= r.optimal_volume);
      CHECK(r.bounds_hold());
    }
  }
}

TEST_CASE("parallel and serial batches agree") {
  std::vector<std::shared_ptr<const Instance>> batch;
  std::uint64_t seed = 500;
  for (int k = 0; k < 40; ++k) {
    RandomSpec spec;
    spec.n = 6 + static_cast<std::size_t>(k % 4);
    spec.family = static_cast<ShapeFamily>(k % 5);
    spec.weight_max = 3;
    batch.push_back(testing::small_random_instance(spec, 12, seed));
  }
  OracleConfig config;
  config.mode = OracleMode::kExhaustive;
  const auto parallel = ratio_reports(batch, config);
  const auto serial = ratio_reports_serial(batch, config);
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t k = 0; k < serial.size(); ++k) CHECK(csv_row(parallel[k]) == csv_row(serial[k]));
}

TEST_CASE("CSV formatting") {
  CHECK(csv_header() == "n,pairs,a,b,greedy,optimal,proven,ratio,bound_alogb,bound_2a,bound_n");
  const RatioReport r = ratio_report(shared(gen_powers(16)), {});
  const std::string row = csv_row(r);
  CHECK(std::count(row.begin(), row.end(), ',') == 10);
  CHECK(row.rfind("4,6,1,7.5,280,", 0) == 0);
  CHECK_FALSE(summary(r).empty());
}

TEST_CASE("format_number round-trips") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10000; ++k) {
    const double v = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 80) - 60);
    const std::string s = format_number(v);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(format_number(280.0) == "280");
  CHECK(format_number(0.5) == "0.5");
}
