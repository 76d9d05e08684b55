#include "twl/generators.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace twl {
namespace {

std::uint32_t log2_exact(std::uint64_t b) {
  if (b < 2 || !std::has_single_bit(b)) {
    throw std::invalid_argument("b must be a power of two >= 2, got " + std::to_string(b));
  }
  return static_cast<std::uint32_t>(std::countr_zero(b));
}

double pow2(std::uint32_t j) { return std::ldexp(1.0, static_cast<int>(j)); }

// Weight of event j (1-based) within a powers group of n = log2(b) events.
double powers_weight(std::uint32_t j, std::uint32_t n, std::uint64_t b) {
  return j == n ? 1.0 / static_cast<double>(b - 1) : std::ldexp(1.0, -static_cast<int>(j));
}

// Region of event j (1-based) in the half-split reference layout.
ActivityRegion powers_reference_region(EventId id, std::uint32_t j, std::uint64_t b) {
  const double bb = static_cast<double>(b) * static_cast<double>(b);
  return {id, j == 1 ? 0.0 : pow2(j - 1), bb};
}

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo == hi ? lo : lo + (hi - lo) * unit(rng);
}

}  // namespace

Instance gen_table1(double eps) {
  if (!(eps > 0.0 && eps < 1.0 / 34.0)) throw std::invalid_argument("eps must lie in (0, 1/34)");
  struct Row {
    double x, y, t;
  };
  const Row rows[] = {
      {0, 0, 8},      {6, 0, 8},       {0, 6, 8},       {6, 6, 8},       {4, 4, 8 + 2 * eps},
      {3, 3, 16},     {9, 3, 16},      {3, 9, 16},      {9, 9, 16},      {7, 7, 16 + eps},
      {6, 6, 21},     {12, 6, 21},     {6, 12, 21},     {12, 12, 21},    {10, 10, 21 - eps},
  };
  std::vector<Event> events;
  for (const Row& r : rows) events.push_back({events.size(), LabelShape::square(r.x, r.y, 6), r.t, 1.0});
  return Instance(std::move(events), 0.0, 24.0, {{"generator", "table1"}, {"eps", eps}});
}

Instance gen_powers(std::uint64_t b) {
  const std::uint32_t n = log2_exact(b);
  std::vector<Event> events;
  for (std::uint32_t j = 1; j <= n; ++j) {
    events.push_back({events.size(), LabelShape::square(0, 0, 1), pow2(j), powers_weight(j, n, b)});
  }
  const double bb = static_cast<double>(b) * static_cast<double>(b);
  return Instance(std::move(events), 0.0, bb, {{"generator", "powers"}, {"b", b}});
}

ActivityDiagram gen_powers_reference(std::uint64_t b) {
  auto inst = std::make_shared<const Instance>(gen_powers(b));
  std::vector<ActivityRegion> regions;
  for (std::uint32_t j = 1; j <= inst->size(); ++j) regions.push_back(powers_reference_region(j - 1, j, b));
  return ActivityDiagram(std::move(inst), std::move(regions));
}

Instance gen_refined(std::uint32_t a, std::uint32_t m) {
  if (a < 1 || m < 1) throw std::invalid_argument("refined family needs a >= 1 and m >= 1");
  if (m > 26) throw std::invalid_argument("m too large for exact timestamps");
  const std::uint64_t b = std::uint64_t{1} << m;
  std::vector<Event> events;
  for (std::uint32_t group = 0; group <= a; ++group) {
    const LabelShape shape = group == 0 ? LabelShape::rectangle(a, 0.5, 2.0 * a, 1.0)
                                        : LabelShape::square(2.0 * group - 1.25, 1.0, 1.0);
    for (std::uint32_t j = 1; j <= m; ++j) {
      events.push_back({events.size(), shape, pow2(j), powers_weight(j, m, b)});
    }
  }
  const double bb = static_cast<double>(b) * static_cast<double>(b);
  return Instance(std::move(events), 0.0, bb, {{"generator", "refined"}, {"a", a}, {"m", m}});
}

ActivityDiagram gen_refined_reference(std::uint32_t a, std::uint32_t m) {
  auto inst = std::make_shared<const Instance>(gen_refined(a, m));
  const std::uint64_t b = std::uint64_t{1} << m;
  std::vector<ActivityRegion> regions;
  for (std::uint32_t group = 0; group <= a; ++group) {
    for (std::uint32_t j = 1; j <= m; ++j) {
      const EventId id = regions.size();
      if (group == 0) {
        const double t = inst->event(id).timestamp;
        regions.push_back({id, t, t});
      } else {
        regions.push_back(powers_reference_region(id, j, b));
      }
    }
  }
  return ActivityDiagram(std::move(inst), std::move(regions));
}

Instance gen_random(const RandomSpec& spec) {
  if (!(spec.weight_min > 0.0) || !(spec.weight_min <= spec.weight_max)) {
    throw std::invalid_argument("weight range must satisfy 0 < min <= max");
  }
  if (!(spec.t_min < spec.t_max)) throw std::invalid_argument("time window must satisfy t_min < t_max");
  if (!(spec.extent >= 0.0)) throw std::invalid_argument("extent must be non-negative");
  const double first_tick = std::ceil(spec.t_min);
  const double last_tick = std::floor(spec.t_max);
  if (spec.integer_times && first_tick > last_tick) {
    throw std::invalid_argument("time window contains no integer");
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<Event> events;
  events.reserve(spec.n);
  for (std::size_t k = 0; k < spec.n; ++k) {
    const double cx = uniform(rng, 0.0, spec.extent);
    const double cy = uniform(rng, 0.0, spec.extent);
    ShapeFamily family = spec.family;
    if (family == ShapeFamily::kMixed) family = (rng() & 1U) ? ShapeFamily::kDisk : ShapeFamily::kRectangle;
    LabelShape shape = LabelShape::square(cx, cy, 1.0);
    switch (family) {
      case ShapeFamily::kUnitSquare:
        break;
      case ShapeFamily::kUnitDisk:
        shape = LabelShape::disk(cx, cy, 1.0);
        break;
      case ShapeFamily::kRectangle: {
        const double w = uniform(rng, 0.5, 2.0);
        const double h = uniform(rng, 0.5, 2.0);
        shape = LabelShape::rectangle(cx, cy, w, h);
        break;
      }
      case ShapeFamily::kDisk:
        shape = LabelShape::disk(cx, cy, uniform(rng, 0.25, 1.0));
        break;
      case ShapeFamily::kMixed:
        break;
    }
    double t = 0.0;
    if (spec.integer_times) {
      const auto ticks = static_cast<std::uint64_t>(last_tick - first_tick) + 1;
      t = first_tick + static_cast<double>(rng() % ticks);
    } else {
      t = uniform(rng, spec.t_min, spec.t_max);
    }
    const double w = uniform(rng, spec.weight_min, spec.weight_max);
    events.push_back({k, shape, t, w});
  }
  nlohmann::json meta = {{"generator", "random"},
                         {"prng", "mt19937_64"},
                         {"seed", spec.seed},
                         {"n", spec.n},
                         {"family", to_string(spec.family)},
                         {"weight_min", spec.weight_min},
                         {"weight_max", spec.weight_max},
                         {"extent", spec.extent},
                         {"integer_times", spec.integer_times}};
  return Instance(std::move(events), spec.t_min, spec.t_max, std::move(meta));
}

const char* to_string(ShapeFamily family) {
  switch (family) {
    case ShapeFamily::kUnitSquare: return "unit-square";
    case ShapeFamily::kUnitDisk: return "unit-disk";
    case ShapeFamily::kRectangle: return "rectangle";
    case ShapeFamily::kDisk: return "disk";
    case ShapeFamily::kMixed: return "mixed";
  }
  return "unknown";
}

ShapeFamily shape_family_from_string(const std::string& name) {
  for (ShapeFamily f : {ShapeFamily::kUnitSquare, ShapeFamily::kUnitDisk, ShapeFamily::kRectangle,
                        ShapeFamily::kDisk, ShapeFamily::kMixed}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown shape family '" + name + "'");
}

}  // namespace twl
