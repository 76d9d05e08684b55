#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <httplib.h>

#include "twl/model.hpp"

namespace twl::cli {

struct ServeData {
  ActivityDiagram diagram;
  std::string instance_text;  // served verbatim
  std::string diagram_text;   // served verbatim
  std::optional<std::filesystem::path> static_dir;
};

/// Read-only API over one loaded diagram:
///   GET /api/instance, GET /api/diagram, GET /api/query?from=T1&to=T2, GET /
std::unique_ptr<httplib::Server> make_server(std::shared_ptr<const ServeData> data);

/// Loads the instance and diagram files; the diagram's regions are attached
/// to the given instance.
std::shared_ptr<const ServeData> load_serve_data(const std::filesystem::path& instance_file,
                                                 const std::filesystem::path& diagram_file,
                                                 std::optional<std::filesystem::path> static_dir);

}  // namespace twl::cli
