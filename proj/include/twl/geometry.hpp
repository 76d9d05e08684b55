#pragma once

#include <variant>

namespace twl {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned rectangle given by its center and full extents.
struct RectFootprint {
  Point center;
  double width = 0.0;
  double height = 0.0;

  friend bool operator==(const RectFootprint&, const RectFootprint&) = default;
};

struct DiskFootprint {
  Point center;
  double radius = 0.0;

  friend bool operator==(const DiskFootprint&, const DiskFootprint&) = default;
};

// The footprint of a label at its fixed map position. Construction through
// the factories enforces positive extents and finite coordinates.
class LabelShape {
 public:
  using Footprint = std::variant<RectFootprint, DiskFootprint>;

  static LabelShape rectangle(double cx, double cy, double width, double height);
  static LabelShape square(double cx, double cy, double side);
  static LabelShape disk(double cx, double cy, double radius);

  bool is_rectangle() const { return std::holds_alternative<RectFootprint>(footprint_); }
  bool is_disk() const { return std::holds_alternative<DiskFootprint>(footprint_); }

  const RectFootprint& rect() const { return std::get<RectFootprint>(footprint_); }
  const DiskFootprint& circle() const { return std::get<DiskFootprint>(footprint_); }
  const Footprint& footprint() const { return footprint_; }
  Point center() const;

  friend bool operator==(const LabelShape&, const LabelShape&) = default;

 private:
  explicit LabelShape(Footprint f) : footprint_(f) {}
  Footprint footprint_;
};

/// True iff the open interiors of the two footprints intersect. Touching
/// boundaries do not count.
bool conflicts(const LabelShape& a, const LabelShape& b);

}  // namespace twl
