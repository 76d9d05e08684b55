#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twl/model.hpp"

namespace twl {

// Malformed or inconsistent input file. The message names the offending
// field, e.g. "events[3].w: missing".
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// `instance_ref` is either a path string or the inline instance object.
nlohmann::json diagram_to_json(const ActivityDiagram& d, const nlohmann::json& instance_ref);

/// Builds a diagram from its JSON form. A string instance_ref is resolved
/// against `base_dir` unless `known` is given, in which case the regions are
/// attached to it. In strict mode anchoring violations and a stored volume
/// off by more than 1e-12 (relative) are errors.
ActivityDiagram diagram_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                  std::shared_ptr<const Instance> known, bool strict);

void save_diagram(const ActivityDiagram& d, const std::filesystem::path& path,
                  const nlohmann::json& instance_ref);
ActivityDiagram load_diagram(const std::filesystem::path& path, bool strict = true);

/// Relative difference used for stored-vs-recomputed volume checks.
bool volumes_match(double stored, double recomputed, double rel_tol = 1e-12);

std::string render_svg_configspace(const ActivityDiagram& d);
void export_svg_configspace(const ActivityDiagram& d, const std::filesystem::path& path);

/// Throws std::invalid_argument if two active events conflict.
std::string render_svg_map(const Instance& inst, std::span<const EventId> active);
void export_svg_map(const Instance& inst, std::span<const EventId> active,
                    const std::filesystem::path& path);

}  // namespace twl
