#include "twl/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace twl {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw SchemaError((path.empty() ? "<root>" : path) + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(join(path, key) + ": missing");
  return *it;
}

double number(const json& obj, const std::string& path, const std::string& key) {
  const json& v = field(obj, path, key);
  if (!v.is_number()) throw SchemaError(join(path, key) + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(join(path, key) + ": must be finite");
  return d;
}

std::size_t index_field(const json& obj, const std::string& path, const std::string& key) {
  const json& v = field(obj, path, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw SchemaError(join(path, key) + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

LabelShape shape_from_json(const json& j, const std::string& path) {
  const json& kind = field(j, path, "kind");
  if (!kind.is_string()) throw SchemaError(join(path, "kind") + ": expected \"rect\" or \"disk\"");
  const double cx = number(j, path, "cx");
  const double cy = number(j, path, "cy");
  try {
    if (kind == "rect") return LabelShape::rectangle(cx, cy, number(j, path, "w"), number(j, path, "h"));
    if (kind == "disk") return LabelShape::disk(cx, cy, number(j, path, "r"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path + ": " + e.what());
  }
  throw SchemaError(join(path, "kind") + ": expected \"rect\" or \"disk\"");
}

json shape_to_json(const LabelShape& s) {
  if (s.is_rectangle()) {
    const RectFootprint& r = s.rect();
    return {{"kind", "rect"}, {"cx", r.center.x}, {"cy", r.center.y}, {"w", r.width}, {"h", r.height}};
  }
  const DiskFootprint& d = s.circle();
  return {{"kind", "disk"}, {"cx", d.center.x}, {"cy", d.center.y}, {"r", d.radius}};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Deterministic, well-spread colour per event id (golden-angle hue steps).
std::string colour(EventId id) {
  const double hue = std::fmod(static_cast<double>(id) * 137.508, 360.0);
  return "hsl(" + fmt(hue) + ",65%,55%)";
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

json instance_to_json(const Instance& inst) {
  json events = json::array();
  for (const Event& e : inst.events()) {
    events.push_back({{"id", e.id}, {"t", e.timestamp}, {"w", e.weight}, {"shape", shape_to_json(e.shape)}});
  }
  return {{"t_min", inst.t_min()}, {"t_max", inst.t_max()}, {"events", std::move(events)}, {"meta", inst.meta()}};
}

Instance instance_from_json(const json& j) {
  const double t_min = number(j, "", "t_min");
  const double t_max = number(j, "", "t_max");
  if (!(t_min < t_max)) throw SchemaError("t_max: must exceed t_min");
  const json& list = field(j, "", "events");
  if (!list.is_array()) throw SchemaError("events: expected an array");

  std::vector<Event> events;
  events.reserve(list.size());
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = "events[" + std::to_string(k) + "]";
    const json& ej = list[k];
    Event e;
    e.id = index_field(ej, path, "id");
    if (e.id != k) throw SchemaError(join(path, "id") + ": ids must equal list positions");
    e.timestamp = number(ej, path, "t");
    if (e.timestamp < t_min || e.timestamp > t_max) throw SchemaError(join(path, "t") + ": outside [t_min, t_max]");
    e.weight = number(ej, path, "w");
    if (!(e.weight > 0.0)) throw SchemaError(join(path, "w") + ": must be positive");
    e.shape = shape_from_json(field(ej, path, "shape"), join(path, "shape"));
    events.push_back(e);
  }
  json meta = json::object();
  if (const auto it = j.find("meta"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("meta: expected an object");
    meta = *it;
  }
  return Instance(std::move(events), t_min, t_max, std::move(meta));
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_json_file(path, instance_to_json(inst));
}

Instance load_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_json_file(path));
  } catch (const SchemaError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw SchemaError(path.string() + ": " + what);
  }
}

json diagram_to_json(const ActivityDiagram& d, const json& instance_ref) {
  json regions = json::array();
  for (const ActivityRegion& r : d.regions()) regions.push_back({{"id", r.event_id}, {"l", r.left}, {"u", r.top}});
  return {{"instance_ref", instance_ref}, {"regions", std::move(regions)}, {"volume", diagram_volume(d)}};
}

bool volumes_match(double stored, double recomputed, double rel_tol) {
  const double scale = std::max(std::abs(stored), std::abs(recomputed));
  return std::abs(stored - recomputed) <= rel_tol * scale;
}

ActivityDiagram diagram_from_json(const json& j, const std::filesystem::path& base_dir,
                                  std::shared_ptr<const Instance> known, bool strict) {
  std::shared_ptr<const Instance> inst = std::move(known);
  if (!inst) {
    const json& ref = field(j, "", "instance_ref");
    if (ref.is_string()) {
      std::filesystem::path p = ref.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      inst = std::make_shared<const Instance>(load_instance(p));
    } else if (ref.is_object()) {
      try {
        inst = std::make_shared<const Instance>(instance_from_json(ref));
      } catch (const SchemaError& e) {
        throw SchemaError(std::string("instance_ref.") + e.what());
      }
    } else {
      throw SchemaError("instance_ref: expected a path string or an inline instance");
    }
  }

  const json& list = field(j, "", "regions");
  if (!list.is_array()) throw SchemaError("regions: expected an array");
  if (list.size() != inst->size()) {
    throw SchemaError("regions: " + std::to_string(list.size()) + " regions for an instance with " +
                      std::to_string(inst->size()) + " events");
  }
  std::vector<ActivityRegion> regions;
  regions.reserve(list.size());
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = "regions[" + std::to_string(k) + "]";
    ActivityRegion r;
    r.event_id = index_field(list[k], path, "id");
    if (r.event_id != k) throw SchemaError(join(path, "id") + ": ids must equal list positions");
    r.left = number(list[k], path, "l");
    r.top = number(list[k], path, "u");
    if (strict) {
      const Event& e = inst->event(k);
      if (r.left < inst->t_min() || r.left > e.timestamp) {
        throw SchemaError(join(path, "l") + ": must lie in [t_min, t] of event " + std::to_string(k));
      }
      if (r.top < e.timestamp || r.top > inst->t_max()) {
        throw SchemaError(join(path, "u") + ": must lie in [t, t_max] of event " + std::to_string(k));
      }
    }
    regions.push_back(r);
  }
  ActivityDiagram d(std::move(inst), std::move(regions));
  if (strict) {
    const double stored = number(j, "", "volume");
    const double recomputed = diagram_volume(d);
    if (!volumes_match(stored, recomputed)) {
      std::ostringstream os;
      os.precision(17);
      os << "volume: stored " << stored << " but regions give " << recomputed;
      throw SchemaError(os.str());
    }
  }
  return d;
}

void save_diagram(const ActivityDiagram& d, const std::filesystem::path& path, const json& instance_ref) {
  write_json_file(path, diagram_to_json(d, instance_ref));
}

ActivityDiagram load_diagram(const std::filesystem::path& path, bool strict) {
  try {
    return diagram_from_json(read_json_file(path), path.parent_path(), nullptr, strict);
  } catch (const SchemaError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw SchemaError(path.string() + ": " + what);
  }
}

std::string render_svg_configspace(const ActivityDiagram& d) {
  const Instance& inst = d.instance();
  constexpr double kSize = 600.0;
  constexpr double kMargin = 30.0;
  const double scale = kSize / (inst.t_max() - inst.t_min());
  const auto sx = [&](double t) { return kMargin + (t - inst.t_min()) * scale; };
  const auto sy = [&](double t) { return kMargin + (inst.t_max() - t) * scale; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(kSize + 2 * kMargin)
     << "\" height=\"" << fmt(kSize + 2 * kMargin) << "\">\n"
     << "  <polygon points=\"" << fmt(sx(inst.t_min())) << ',' << fmt(sy(inst.t_min())) << ' '
     << fmt(sx(inst.t_max())) << ',' << fmt(sy(inst.t_max())) << ' ' << fmt(sx(inst.t_min())) << ','
     << fmt(sy(inst.t_max())) << "\" fill=\"#f4f4f4\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  for (const ActivityRegion& r : d.regions()) {
    const Event& e = inst.event(r.event_id);
    if (region_area(r, e) <= 0.0) continue;
    const double x = sx(r.left);
    const double y = sy(r.top);
    const double w = (e.timestamp - r.left) * scale;
    const double h = (r.top - e.timestamp) * scale;
    os << "  <g id=\"region-" << r.event_id << "\">\n"
       << "    <rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w) << "\" height=\""
       << fmt(h) << "\" fill=\"" << colour(r.event_id)
       << "\" fill-opacity=\"0.6\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n"
       << "    <text x=\"" << fmt(x + w / 2) << "\" y=\"" << fmt(y + h / 2)
       << "\" font-size=\"10\" text-anchor=\"middle\">" << r.event_id << "</text>\n"
       << "  </g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_svg_map(const Instance& inst, std::span<const EventId> active) {
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      if (conflicts(inst.event(active[a]).shape, inst.event(active[b]).shape)) {
        throw std::invalid_argument("active events " + std::to_string(active[a]) + " and " +
                                    std::to_string(active[b]) + " conflict");
      }
    }
  }
  double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
  bool first = true;
  for (const Event& e : inst.events()) {
    double hx = 0, hy = 0;
    if (e.shape.is_rectangle()) {
      hx = e.shape.rect().width / 2;
      hy = e.shape.rect().height / 2;
    } else {
      hx = hy = e.shape.circle().radius;
    }
    const Point c = e.shape.center();
    if (first) {
      min_x = c.x - hx, max_x = c.x + hx, min_y = c.y - hy, max_y = c.y + hy;
      first = false;
    }
    min_x = std::min(min_x, c.x - hx);
    max_x = std::max(max_x, c.x + hx);
    min_y = std::min(min_y, c.y - hy);
    max_y = std::max(max_y, c.y + hy);
  }
  constexpr double kSize = 600.0;
  constexpr double kMargin = 20.0;
  const double scale = kSize / std::max(max_x - min_x, max_y - min_y);
  const auto sx = [&](double x) { return kMargin + (x - min_x) * scale; };
  const auto sy = [&](double y) { return kMargin + (max_y - y) * scale; };

  std::vector<bool> is_active(inst.size(), false);
  for (EventId id : active) is_active.at(id) = true;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(kSize + 2 * kMargin)
     << "\" height=\"" << fmt(kSize + 2 * kMargin) << "\">\n";
  // Inactive labels first so highlighted ones are drawn on top.
  for (int pass = 0; pass < 2; ++pass) {
    for (const Event& e : inst.events()) {
      if (is_active[e.id] != (pass == 1)) continue;
      const std::string style = is_active[e.id]
                                    ? "fill=\"" + colour(e.id) + "\" fill-opacity=\"0.8\" stroke=\"#000000\" stroke-width=\"2\""
                                    : std::string("fill=\"#cccccc\" fill-opacity=\"0.3\" stroke=\"#999999\" stroke-width=\"0.5\"");
      const Point c = e.shape.center();
      os << "  <g id=\"label-" << e.id << "\">\n";
      if (e.shape.is_rectangle()) {
        const RectFootprint& r = e.shape.rect();
        os << "    <rect x=\"" << fmt(sx(c.x - r.width / 2)) << "\" y=\"" << fmt(sy(c.y + r.height / 2))
           << "\" width=\"" << fmt(r.width * scale) << "\" height=\"" << fmt(r.height * scale) << "\" " << style
           << "/>\n";
      } else {
        os << "    <circle cx=\"" << fmt(sx(c.x)) << "\" cy=\"" << fmt(sy(c.y)) << "\" r=\""
           << fmt(e.shape.circle().radius * scale) << "\" " << style << "/>\n";
      }
      os << "    <text x=\"" << fmt(sx(c.x)) << "\" y=\"" << fmt(sy(c.y))
         << "\" font-size=\"10\" text-anchor=\"middle\">" << e.id << "</text>\n"
         << "  </g>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

namespace {
void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << text;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}
}  // namespace

void export_svg_configspace(const ActivityDiagram& d, const std::filesystem::path& path) {
  write_text(path, render_svg_configspace(d));
}

void export_svg_map(const Instance& inst, std::span<const EventId> active, const std::filesystem::path& path) {
  write_text(path, render_svg_map(inst, active));
}

}  // namespace twl
