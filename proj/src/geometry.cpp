#include "twl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace twl {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_positive(double v, const char* what) {
  require_finite(v, what);
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

bool rect_rect(const RectFootprint& a, const RectFootprint& b) {
  return std::abs(a.center.x - b.center.x) < (a.width + b.width) / 2 &&
         std::abs(a.center.y - b.center.y) < (a.height + b.height) / 2;
}

bool disk_disk(const DiskFootprint& a, const DiskFootprint& b) {
  const double dx = a.center.x - b.center.x;
  const double dy = a.center.y - b.center.y;
  const double reach = a.radius + b.radius;
  return dx * dx + dy * dy < reach * reach;
}

// Closest point of the closed rectangle to the disk center; the open
// interiors meet iff that point is strictly inside the disk.
bool rect_disk(const RectFootprint& r, const DiskFootprint& d) {
  const double hx = r.width / 2;
  const double hy = r.height / 2;
  const double px = std::clamp(d.center.x, r.center.x - hx, r.center.x + hx);
  const double py = std::clamp(d.center.y, r.center.y - hy, r.center.y + hy);
  const double dx = d.center.x - px;
  const double dy = d.center.y - py;
  return dx * dx + dy * dy < d.radius * d.radius;
}

}  // namespace

LabelShape LabelShape::rectangle(double cx, double cy, double width, double height) {
  require_finite(cx, "center x");
  require_finite(cy, "center y");
  require_positive(width, "width");
  require_positive(height, "height");
  return LabelShape(RectFootprint{{cx, cy}, width, height});
}

LabelShape LabelShape::square(double cx, double cy, double side) {
  return rectangle(cx, cy, side, side);
}

LabelShape LabelShape::disk(double cx, double cy, double radius) {
  require_finite(cx, "center x");
  require_finite(cy, "center y");
  require_positive(radius, "radius");
  return LabelShape(DiskFootprint{{cx, cy}, radius});
}

Point LabelShape::center() const {
  return std::visit([](const auto& f) { return f.center; }, footprint_);
}

bool conflicts(const LabelShape& a, const LabelShape& b) {
  if (a.is_rectangle() && b.is_rectangle()) return rect_rect(a.rect(), b.rect());
  if (a.is_disk() && b.is_disk()) return disk_disk(a.circle(), b.circle());
  if (a.is_rectangle()) return rect_disk(a.rect(), b.circle());
  return rect_disk(b.rect(), a.circle());
}

}  // namespace twl
