#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "twl/generators.hpp"
#include "twl/oracle.hpp"

using namespace twl;

namespace {

std::vector<EventId> neighbours(const Instance& inst, EventId id) {
  std::vector<EventId> out;
  for (EventId k = 0; k < inst.size(); ++k)
    if (k != id && conflicts(inst.event(id).shape, inst.event(k).shape)) out.push_back(k);
  return out;
}

}  // namespace

TEST_CASE("table1 family") {
  const double eps = 1.0 / 64.0;
  const Instance inst = gen_table1(eps);
  REQUIRE(inst.size() == 15);
  CHECK(inst.t_min() == 0.0);
  CHECK(inst.t_max() == 24.0);
  const double times[] = {8, 8, 8, 8, 8 + 2 * eps, 16, 16, 16, 16, 16 + eps, 21, 21, 21, 21, 21 - eps};
  for (EventId id = 0; id < 15; ++id) {
    const Event& e = inst.event(id);
    CHECK(e.id == id);
    CHECK(e.weight == 1.0);
    CHECK(e.timestamp == times[id]);
    REQUIRE(e.shape.is_rectangle());
    CHECK(e.shape.rect().width == 6.0);
    CHECK(e.shape.rect().height == 6.0);
  }
  CHECK(inst.event(4).shape.center() == Point{4, 4});
  CHECK(inst.event(14).shape.center() == Point{10, 10});

  CHECK(neighbours(inst, 4).size() == 10);
  CHECK(neighbours(inst, 9) == std::vector<EventId>{3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 14});
  CHECK(neighbours(inst, 14) == std::vector<EventId>{3, 8, 9, 10, 11, 12, 13});
  CHECK(conflict_pairs(inst).size() == 45);

  CHECK(gen_table1() == inst);
  CHECK_THROWS_AS(gen_table1(0.0), std::invalid_argument);
  CHECK_THROWS_AS(gen_table1(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(gen_table1(1.0 / 34.0), std::invalid_argument);
  CHECK_NOTHROW(gen_table1(0.029));
}

TEST_CASE("powers family") {
  SUBCASE("b = 16") {
    const Instance inst = gen_powers(16);
    REQUIRE(inst.size() == 4);
    CHECK(inst.t_max() == 256.0);
    const double times[] = {2, 4, 8, 16};
    const double weights[] = {0.5, 0.25, 0.125, 1.0 / 15};
    for (EventId id = 0; id < 4; ++id) {
      CHECK(inst.event(id).timestamp == times[id]);
      CHECK(inst.event(id).weight == weights[id]);
      CHECK(inst.event(id).shape.center() == Point{0, 0});
    }
    CHECK(conflict_pairs(inst).size() == 6);
  }
  SUBCASE("b = 2 has one event") {
    const Instance inst = gen_powers(2);
    REQUIRE(inst.size() == 1);
    CHECK(inst.event(0).timestamp == 2.0);
    CHECK(inst.event(0).weight == 1.0);
    CHECK(inst.t_max() == 4.0);
    CHECK(diagram_volume(gen_powers_reference(2)) == 4.0);
  }
  SUBCASE("invalid b") {
    for (std::uint64_t b : {0, 1, 3, 12, 100}) CHECK_THROWS_AS(gen_powers(b), std::invalid_argument);
  }
  SUBCASE("reference layout") {
    for (std::uint64_t b : {4, 8, 16, 32, 64, 1024}) {
      const ActivityDiagram ref = gen_powers_reference(b);
      CHECK(validate(ref).ok());
      const double bb = double(b) * double(b);
      double expected = 0;
      double left = 0;
      for (const Event& e : ref.instance().events()) {
        expected += e.weight * (e.timestamp - left) * (bb - e.timestamp);
        left = e.timestamp;
      }
      CHECK(diagram_volume(ref) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(diagram_volume(gen_powers_reference(16)) == 632.0);
  }
}

TEST_CASE("refined family") {
  SUBCASE("shape layout") {
    const Instance inst = gen_refined(3, 2);
    REQUIRE(inst.size() == 8);
    for (EventId g0 = 0; g0 < 2; ++g0)
      for (EventId other = 2; other < 8; ++other)
        CHECK(conflicts(inst.event(g0).shape, inst.event(other).shape));
    for (EventId x = 2; x < 8; ++x)
      for (EventId y = x + 1; y < 8; ++y)
        CHECK(conflicts(inst.event(x).shape, inst.event(y).shape) == ((x - 2) / 2 == (y - 2) / 2));
    CHECK(inst.t_max() == 16.0);
    CHECK(inst.event(1).weight == 1.0 / 3);
    CHECK(inst.event(3).timestamp == 4.0);
  }
  SUBCASE("reference") {
    for (std::uint32_t a : {1, 2, 4}) {
      const ActivityDiagram ref = gen_refined_reference(a, 4);
      CHECK(validate(ref).ok());
      CHECK(diagram_volume(ref) == 632.0 * a);
    }
    for (EventId id = 0; id < 4; ++id) {
      const ActivityDiagram ref = gen_refined_reference(2, 4);
      CHECK(region_area(ref.region(id), ref.instance().event(id)) == 0.0);
    }
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(gen_refined(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(gen_refined(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_refined(2, 27), std::invalid_argument);
  }
}

TEST_CASE("random family") {
  RandomSpec spec;
  spec.seed = 42;
  spec.n = 30;
  spec.family = ShapeFamily::kMixed;
  spec.weight_min = 0.5;
  spec.weight_max = 4;
  spec.t_min = -2;
  spec.t_max = 7;

  const Instance a = gen_random(spec);
  CHECK(a == gen_random(spec));
  REQUIRE(a.size() == 30);
  bool saw_disk = false, saw_rect = false;
  for (const Event& e : a.events()) {
    CHECK(e.timestamp >= -2);
    CHECK(e.timestamp <= 7);
    CHECK(e.weight >= 0.5);
    CHECK(e.weight <= 4);
    saw_disk = saw_disk || e.shape.is_disk();
    saw_rect = saw_rect || e.shape.is_rectangle();
  }
  CHECK(saw_disk);
  CHECK(saw_rect);
  CHECK(a.meta()["seed"] == 42);
  CHECK(a.meta()["family"] == "mixed");
  CHECK(a.meta()["prng"] == "mt19937_64");

  spec.seed = 43;
  CHECK_FALSE(a == gen_random(spec));

  SUBCASE("integer timestamps") {
    spec.integer_times = true;
    spec.t_min = 0.5;
    spec.t_max = 4.5;
    const Instance ints = gen_random(spec);
    for (const Event& e : ints.events()) {
      CHECK(e.timestamp == std::floor(e.timestamp));
      CHECK(e.timestamp >= 1);
      CHECK(e.timestamp <= 4);
    }
    spec.t_min = 0.2;
    spec.t_max = 0.8;
    CHECK_THROWS_AS(gen_random(spec), std::invalid_argument);
  }
  SUBCASE("unit families") {
    spec.family = ShapeFamily::kUnitDisk;
    const Instance disks = gen_random(spec);
    for (const Event& e : disks.events()) CHECK(e.shape.circle().radius == 1.0);
    spec.family = ShapeFamily::kUnitSquare;
    const Instance squares = gen_random(spec);
    for (const Event& e : squares.events()) CHECK(e.shape.rect().width == 1.0);
  }
  SUBCASE("empty and invalid specs") {
    spec.n = 0;
    CHECK(gen_random(spec).empty());
    spec.weight_min = 0;
    CHECK_THROWS_AS(gen_random(spec), std::invalid_argument);
    spec.weight_min = 1;
    spec.t_max = spec.t_min;
    CHECK_THROWS_AS(gen_random(spec), std::invalid_argument);
  }
  SUBCASE("family names") {
    for (ShapeFamily f : {ShapeFamily::kUnitSquare, ShapeFamily::kUnitDisk, ShapeFamily::kRectangle,
                          ShapeFamily::kDisk, ShapeFamily::kMixed})
      CHECK(shape_family_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(shape_family_from_string("hexagon"), std::invalid_argument);
  }
}
