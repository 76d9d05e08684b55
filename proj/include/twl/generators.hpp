#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "twl/model.hpp"

namespace twl {

inline constexpr double kDefaultTable1Epsilon = 1.0 / 64.0;

/// Fifteen 6x6 squares on three staggered grids where greedy loses a factor
/// above four. Requires 0 < eps < 1/34; t_min = 0, t_max = 24.
Instance gen_table1(double eps = kDefaultTable1Epsilon);

/// log2(b) identical unit squares at timestamps 2^j in [0, b^2]; the last
/// event weighs 1/(b-1), event j < n weighs 2^-j. b must be a power of two >= 2.
Instance gen_powers(std::uint64_t b);

/// Each event keeps the right half of its maximum region; event 1 keeps the
/// whole width [0, 2].
ActivityDiagram gen_powers_reference(std::uint64_t b);

/// (a + 1) groups of the powers family with b = 2^m. Group 0 shares one wide
/// rectangle that overlaps the unit squares of groups 1..a; those squares
/// are pairwise disjoint. Ids are group-major, group 0 first.
Instance gen_refined(std::uint32_t a, std::uint32_t m);

/// Powers reference layout for groups 1..a, degenerate regions for group 0.
ActivityDiagram gen_refined_reference(std::uint32_t a, std::uint32_t m);

enum class ShapeFamily { kUnitSquare, kUnitDisk, kRectangle, kDisk, kMixed };

struct RandomSpec {
  std::uint64_t seed = 1;
  std::size_t n = 8;
  ShapeFamily family = ShapeFamily::kUnitSquare;
  double weight_min = 1.0;
  double weight_max = 1.0;
  double t_min = 0.0;
  double t_max = 1.0;
  double extent = 3.0;          // label centers are uniform in [0, extent]^2
  bool integer_times = false;   // draw timestamps from the integers in [t_min, t_max]
};

/// Reproducible instance from a 64-bit seed (std::mt19937_64); the generator
/// name and all parameters are recorded in meta.
Instance gen_random(const RandomSpec& spec);

const char* to_string(ShapeFamily family);
ShapeFamily shape_family_from_string(const std::string& name);

}  // namespace twl
