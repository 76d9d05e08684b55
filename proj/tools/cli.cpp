#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <optional>

#include "server.hpp"
#include "twl/analysis.hpp"
#include "twl/generators.hpp"
#include "twl/greedy.hpp"
#include "twl/io.hpp"
#include "twl/oracle.hpp"

namespace twl::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerateOptions {
  double eps = kDefaultTable1Epsilon;
  std::uint64_t b = 16;
  std::uint32_t a = 2;
  std::uint32_t m = 4;
  RandomSpec random;
  std::string family = "unit-square";
  std::string out;
  std::string reference_out;
};

struct SolveOptions {
  std::string algo = "greedy";
  std::string mode = "auto";
  std::string in;
  std::string out;
  double budget = 60.0;
  std::size_t pair_cap = 20;
  bool inline_instance = false;
};

struct QueryOptions {
  std::string in;
  double from = 0.0;
  double to = 0.0;
};

struct RatioOptions {
  std::vector<std::string> in;
  std::string csv;
  std::string mode = "auto";
  double budget = 60.0;
};

struct ServeOptions {
  std::string instance;
  std::string diagram;
  std::string static_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
};

// Path of `target` as seen from the directory of `from_file`.
std::string relative_ref(const fs::path& target, const fs::path& from_file) {
  const fs::path base = fs::absolute(from_file).parent_path();
  const fs::path rel = fs::absolute(target).lexically_relative(base);
  return rel.empty() ? fs::absolute(target).string() : rel.generic_string();
}

void print_stats(const Instance& inst, std::ostream& out) {
  const InstanceStats s = instance_stats(inst);
  out << "n = " << s.n << "\nconflict pairs = " << s.conflict_pair_count << "\na = ";
  if (s.interference.exact) {
    out << s.interference.a;
  } else {
    out << ">= " << s.interference.a << " (neighbourhood too large for exact computation)";
  }
  out << "\nb = " << (inst.empty() ? std::string("n/a") : format_number(s.unbalance)) << '\n';
}

OracleConfig make_oracle_config(const std::string& mode, const Instance& inst, double budget, std::size_t cap) {
  OracleConfig config;
  config.time_budget_seconds = budget;
  config.pair_cap = cap;
  if (mode == "exhaustive") {
    config.mode = OracleMode::kExhaustive;
  } else if (mode == "bnb") {
    config.mode = OracleMode::kBranchAndBound;
  } else {
    config.mode = conflict_pairs(inst).size() <= cap ? OracleMode::kExhaustive : OracleMode::kBranchAndBound;
  }
  return config;
}

int do_generate(const std::string& which, GenerateOptions& o, std::ostream& out) {
  std::optional<Instance> inst;
  std::optional<ActivityDiagram> reference;
  try {
    if (which == "table1") {
      inst = gen_table1(o.eps);
    } else if (which == "powers") {
      inst = gen_powers(o.b);
      reference = gen_powers_reference(o.b);
    } else if (which == "refined") {
      inst = gen_refined(o.a, o.m);
      reference = gen_refined_reference(o.a, o.m);
    } else {
      o.random.family = shape_family_from_string(o.family);
      inst = gen_random(o.random);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  save_instance(*inst, o.out);
  out << "wrote " << o.out << '\n';
  print_stats(*inst, out);
  if (!o.reference_out.empty()) {
    if (!reference) throw UsageError("--reference-out is only available for powers and refined");
    save_diagram(*reference, o.reference_out, relative_ref(o.out, o.reference_out));
    out << "reference volume = " << format_number(diagram_volume(*reference)) << '\n';
  }
  return kOk;
}

int do_solve(const SolveOptions& o, std::ostream& out) {
  auto inst = std::make_shared<const Instance>(load_instance(o.in));
  const nlohmann::json ref = o.inline_instance ? instance_to_json(*inst) : nlohmann::json(relative_ref(o.in, o.out));
  if (o.algo == "greedy") {
    const GreedyResult g = solve_greedy(inst);
    save_diagram(g.diagram, o.out, ref);
    out << "volume = " << format_number(diagram_volume(g.diagram)) << '\n';
    return kOk;
  }
  const OracleConfig config = make_oracle_config(o.mode, *inst, o.budget, o.pair_cap);
  const OracleResult r = [&] {
    try {
      return solve_optimal(inst, config);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  save_diagram(r.diagram, o.out, ref);
  out << "volume = " << format_number(r.volume) << "\nproven = " << (r.proven_optimal ? "true" : "false")
      << "\nnodes = " << r.nodes << '\n';
  return r.proven_optimal ? kOk : kUnproven;
}

int do_verify(const std::string& in, std::ostream& out) {
  const nlohmann::json j = read_json_file(in);
  const ActivityDiagram d = diagram_from_json(j, fs::path(in).parent_path(), nullptr, /*strict=*/false);
  std::size_t problems = 0;
  for (const Violation& v : validate(d).violations) {
    out << v.message << '\n';
    ++problems;
  }
  const double recomputed = diagram_volume(d);
  if (!j.contains("volume") || !j["volume"].is_number()) {
    out << "volume: missing\n";
    ++problems;
  } else if (!volumes_match(j["volume"].get<double>(), recomputed)) {
    out << "volume: stored " << format_number(j["volume"].get<double>()) << " but regions give "
        << format_number(recomputed) << '\n';
    ++problems;
  }
  if (problems == 0) out << "valid, volume = " << format_number(recomputed) << '\n';
  return problems == 0 ? kOk : kIoError;
}

int do_query(const QueryOptions& o, std::ostream& out) {
  const ActivityDiagram d = load_diagram(o.in);
  if (o.from > o.to) throw UsageError("--from must not exceed --to");
  std::vector<EventId> active;
  try {
    active = query(d, {o.from, o.to});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (std::size_t k = 0; k < active.size(); ++k) out << (k ? " " : "") << active[k];
  out << '\n';
  return kOk;
}

int do_ratio(const RatioOptions& o, std::ostream& out) {
  std::optional<std::ofstream> csv;
  if (!o.csv.empty()) {
    csv.emplace(o.csv);
    if (!*csv) throw std::runtime_error(o.csv + ": cannot write");
    *csv << csv_header() << '\n';
  }
  bool violation = false;
  bool unproven = false;
  for (const std::string& file : o.in) {
    auto inst = std::make_shared<const Instance>(load_instance(file));
    const RatioReport r = ratio_report(inst, make_oracle_config(o.mode, *inst, o.budget, 20));
    out << "== " << file << '\n' << summary(r);
    if (csv) *csv << csv_row(r) << '\n';
    violation = violation || !r.bounds_hold();
    unproven = unproven || !r.proven;
  }
  if (violation) return kBoundViolation;
  return unproven ? kUnproven : kOk;
}

int do_serve(const ServeOptions& o, std::ostream& out) {
  std::optional<fs::path> static_dir;
  if (!o.static_dir.empty()) static_dir = o.static_dir;
  auto data = load_serve_data(o.instance, o.diagram, static_dir);
  auto server = make_server(data);
  out << "serving on http://" << o.host << ':' << o.port << '\n' << std::flush;
  if (!server->listen(o.host, o.port)) throw std::runtime_error("cannot listen on port " + std::to_string(o.port));
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Activity diagrams for time-window labeling"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write an instance JSON file");
  generate->require_subcommand(1);
  auto* g_table1 = generate->add_subcommand("table1", "Fifteen-square instance with greedy ratio above 4");
  g_table1->add_option("--eps", gen.eps, "Timestamp offset in (0, 1/34)");
  auto* g_powers = generate->add_subcommand("powers", "Identical labels with power-of-two weights");
  g_powers->add_option("--b", gen.b, "Power of two >= 2")->required();
  auto* g_refined = generate->add_subcommand("refined", "(a+1) groups of the powers family");
  g_refined->add_option("--a", gen.a, "Degree of interference >= 1")->required();
  g_refined->add_option("--m", gen.m, "log2 of b, >= 1")->required();
  auto* g_random = generate->add_subcommand("random", "Reproducible random instance");
  g_random->add_option("--seed", gen.random.seed)->required();
  g_random->add_option("--n", gen.random.n)->required();
  g_random->add_option("--family", gen.family, "unit-square | unit-disk | rectangle | disk | mixed");
  g_random->add_option("--wmin", gen.random.weight_min);
  g_random->add_option("--wmax", gen.random.weight_max);
  g_random->add_option("--tmin", gen.random.t_min);
  g_random->add_option("--tmax", gen.random.t_max);
  g_random->add_option("--extent", gen.random.extent, "Label centers lie in [0, extent]^2");
  g_random->add_flag("--integer-times", gen.random.integer_times);
  for (auto* sub : {g_table1, g_powers, g_refined, g_random}) {
    sub->add_option("--out", gen.out, "Instance file to write")->required();
    sub->add_option("--reference-out", gen.reference_out, "Also write the reference diagram (powers, refined)");
  }

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Compute an activity diagram");
  s->add_option("--algo", solve.algo)->check(CLI::IsMember({"greedy", "optimal"}))->required();
  s->add_option("--in", solve.in, "Instance file")->required();
  s->add_option("--out", solve.out, "Diagram file to write")->required();
  s->add_option("--budget", solve.budget, "Branch-and-bound time budget in seconds");
  s->add_option("--mode", solve.mode, "Oracle mode")->check(CLI::IsMember({"auto", "exhaustive", "bnb"}));
  s->add_option("--pair-cap", solve.pair_cap, "Largest pair count for exhaustive search");
  s->add_flag("--inline", solve.inline_instance, "Embed the instance instead of referencing the file");

  std::string verify_in;
  auto* v = app.add_subcommand("verify", "Check a diagram for violations");
  v->add_option("--in", verify_in, "Diagram file")->required();

  QueryOptions q;
  auto* qc = app.add_subcommand("query", "List the events shown for a time window");
  qc->add_option("--in", q.in, "Diagram file")->required();
  qc->add_option("--from", q.from)->required();
  qc->add_option("--to", q.to)->required();

  RatioOptions ratio;
  auto* rc = app.add_subcommand("ratio", "Greedy vs optimal with approximation bounds");
  rc->add_option("--in", ratio.in, "Instance file(s)")->required();
  rc->add_option("--oracle-budget", ratio.budget, "Branch-and-bound time budget in seconds");
  rc->add_option("--mode", ratio.mode)->check(CLI::IsMember({"auto", "exhaustive", "bnb"}));
  rc->add_option("--csv", ratio.csv, "CSV file to write");

  ServeOptions serve;
  auto* sv = app.add_subcommand("serve", "Read-only HTTP API for the slider UI");
  sv->add_option("--instance", serve.instance)->required();
  sv->add_option("--diagram", serve.diagram)->required();
  sv->add_option("--port", serve.port)->check(CLI::Range(0, 65535));
  sv->add_option("--host", serve.host);
  sv->add_option("--static", serve.static_dir, "Directory holding the UI bundle")->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (generate->parsed()) {
      for (auto* sub : generate->get_subcommands()) return do_generate(sub->get_name(), gen, out);
    }
    if (s->parsed()) return do_solve(solve, out);
    if (v->parsed()) return do_verify(verify_in, out);
    if (qc->parsed()) return do_query(q, out);
    if (rc->parsed()) return do_ratio(ratio, out);
    if (sv->parsed()) return do_serve(serve, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}

}  // namespace twl::cli
