#include "server.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "twl/io.hpp"

namespace twl::cli {
namespace {

constexpr const char* kFallbackPage = R"(<!DOCTYPE html>
<html><head><meta charset="utf-8"><title>time-window labeling</title></head>
<body>
<h1>time-window labeling</h1>
<p>No UI bundle is mounted. Start the server with <code>--static DIR</code> to serve one.</p>
<ul>
<li><a href="/api/instance">/api/instance</a></li>
<li><a href="/api/diagram">/api/diagram</a></li>
<li>/api/query?from=T1&amp;to=T2</li>
</ul>
</body></html>
)";

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string() + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<double> parse_time(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

void bad_request(httplib::Response& res, const std::string& message) {
  res.status = 400;
  res.set_content(nlohmann::json{{"error", message}}.dump(), "application/json");
}

}  // namespace

std::shared_ptr<const ServeData> load_serve_data(const std::filesystem::path& instance_file,
                                                 const std::filesystem::path& diagram_file,
                                                 std::optional<std::filesystem::path> static_dir) {
  std::string instance_text = slurp(instance_file);
  std::string diagram_text = slurp(diagram_file);
  auto inst = std::make_shared<const Instance>(instance_from_json(nlohmann::json::parse(instance_text)));
  ActivityDiagram diagram =
      diagram_from_json(nlohmann::json::parse(diagram_text), diagram_file.parent_path(), inst, /*strict=*/true);
  return std::make_shared<const ServeData>(
      ServeData{std::move(diagram), std::move(instance_text), std::move(diagram_text), std::move(static_dir)});
}

std::unique_ptr<httplib::Server> make_server(std::shared_ptr<const ServeData> data) {
  auto server = std::make_unique<httplib::Server>();

  server->Get("/api/instance", [data](const httplib::Request&, httplib::Response& res) {
    res.set_content(data->instance_text, "application/json");
  });
  server->Get("/api/diagram", [data](const httplib::Request&, httplib::Response& res) {
    res.set_content(data->diagram_text, "application/json");
  });
  server->Get("/api/query", [data](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("from") || !req.has_param("to")) return bad_request(res, "expected from and to");
    const auto from = parse_time(req.get_param_value("from"));
    const auto to = parse_time(req.get_param_value("to"));
    if (!from || !to) return bad_request(res, "from and to must be finite numbers");
    try {
      const std::vector<EventId> active = query(data->diagram, {*from, *to});
      res.set_content(nlohmann::json{{"active", active}}.dump(), "application/json");
    } catch (const std::invalid_argument& e) {
      bad_request(res, e.what());
    }
  });

  if (data->static_dir) {
    server->set_mount_point("/", data->static_dir->string());
  } else {
    server->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kFallbackPage, "text/html");
    });
  }
  return server;
}

}  // namespace twl::cli
