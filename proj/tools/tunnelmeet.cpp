// tunnelmeet: run rendezvous scenarios, dump routes, check tunnels and list
// the quadruple enumeration.
//
// Exit codes: 0 success (every strategy met), 1 rendezvous failure or step
// budget exceeded, 2 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tunnelmeet/enumeration.hpp"
#include "tunnelmeet/error.hpp"
#include "tunnelmeet/geometry.hpp"
#include "tunnelmeet/io.hpp"
#include "tunnelmeet/rendezvous.hpp"

using namespace tunnelmeet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Writes to a sibling temporary and renames, so a failed run leaves no
// partial file behind.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  const std::string tmp = out_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + out_path + "'");
    out << text;
    if (!out.flush()) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + out_path + "'");
  }
  std::filesystem::rename(tmp, out_path);
}

// A world argument is a generator name or a path to a graph-v1/terrain-v1
// file.
World world_arg(const std::string& arg) {
  if (parse_generator_kind(arg)) return load_world(arg);
  return load_world(read_file(arg));
}

QPoint point_arg(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "expected a point 'x,y', got '" + text + "'");
  try {
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
}

struct Options {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> phase_cap;
  std::optional<std::uint64_t> step_budget;
  bool with_float = false;
};

int cmd_run(const std::string& scenario_path, const Options& o) {
  Scenario s = parse_scenario(read_file(scenario_path));
  if (o.seed) s.seeds = {*o.seed};
  if (o.phase_cap) s.limits.phase_cap = *o.phase_cap;
  if (o.step_budget) s.limits.step_budget = *o.step_budget;
  const RunResult r = run_scenario(s);
  emit(o.out, verdict_json(r, o.with_float));
  return r.report.all_met ? kExitOk : kExitFailed;
}

int cmd_route(const std::string& world_path, const std::string& start, Label label, const Options& o) {
  const World w = world_arg(world_path);
  Limits limits{o.phase_cap.value_or(0), o.step_budget.value_or(kDefaultStepBudget)};
  std::ostringstream text;
  if (w.kind == WorldKind::kTerrain) {
    write_planar_dump(text, geometric_rv(*w.terrain, point_arg(start), label, limits));
  } else {
    const auto& g = w.ports();
    write_route_dump(text, g, graph_rv(g, g.node(start), label, limits));
  }
  emit(o.out, text.str());
  return kExitOk;
}

int cmd_tunnel(const std::string& world_path, const std::string& a, const std::string& b, const Options& o) {
  const World w = world_arg(world_path);
  if (w.kind == WorldKind::kTerrain) throw Error(ErrorCode::kInvalidArgument, "tunnel needs a graph world");
  const auto& g = w.ports();
  std::istringstream in1(read_file(a)), in2(read_file(b));
  const Route r1 = read_route_dump(in1, g), r2 = read_route_dump(in2, g);
  validate_route(g, r1);
  validate_route(g, r2);
  const auto cert = tunnel_check(r1, r2);
  emit(o.out, cert ? "tunnel n=" + std::to_string(cert->n) + "\n" : std::string("none\n"));
  return kExitOk;
}

int cmd_enumerate(std::uint64_t from, std::uint64_t count, bool pairs, const Options& o) {
  std::ostringstream text;
  if (pairs) {
    for (std::uint64_t k = from; k < from + count; ++k) text << k << '\t' << to_string(rational_pair(k)) << '\n';
  } else {
    QuadrupleCursor c;
    while (c.index() < from) c.advance();
    for (std::uint64_t n = 0; n < count; ++n, c.advance()) text << c.index() << '\t' << to_string(c.current()) << '\n';
  }
  emit(o.out, text.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* v = std::getenv("TUNNELMEET_ENUM_VERSION"); v && std::string_view(v) != kEnumerationVersion) {
    std::cerr << "tunnelmeet: TUNNELMEET_ENUM_VERSION=" << v << " but this build implements enumeration version "
              << kEnumerationVersion << '\n';
    return kExitInput;
  }

  CLI::App app{"Rendezvous of anonymous agents in port-labeled graphs and polygonal terrains"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
    sub->add_option("--step-budget", o.step_budget, "Maximum route length in steps");
  };

  std::string scenario;
  auto* run = app.add_subcommand("run", "Run a scenario-v1 file and print a verdict-v1 report");
  run->add_option("scenario", scenario, "Scenario file")->required();
  common(run);
  run->add_option("--seed", o.seed, "Use this single adversary seed");
  run->add_option("--phase-cap", o.phase_cap, "Number of phases per route");
  run->add_flag("--float", o.with_float, "Add decimal approximations next to exact values");

  std::string world, start;
  Label label = 1;
  auto* route = app.add_subcommand("route", "Dump the route of one agent");
  route->add_option("--world", world, "graph-v1 or terrain-v1 file, or a generator name")->required();
  route->add_option("--start", start, "Start node name, or 'x,y' in a terrain")->required();
  route->add_option("--label", label, "Agent label")->required()->check(CLI::PositiveNumber);
  route->add_option("--phase-cap", o.phase_cap, "Number of phases")->required();
  common(route);

  std::string dump1, dump2;
  auto* tunnel = app.add_subcommand("tunnel", "Check two route dumps for a tunnel");
  tunnel->add_option("--world", world, "graph-v1 file or generator name")->required();
  tunnel->add_option("first", dump1, "Route dump")->required();
  tunnel->add_option("second", dump2, "Route dump")->required();
  tunnel->add_option("--out", o.out, "Write output to this file instead of stdout");

  std::uint64_t from = 1, count = 20;
  bool pairs = false;
  auto* enumerate = app.add_subcommand("enumerate", "List quadruples phi(k) or rational pairs");
  enumerate->add_option("--from", from, "First index")->check(CLI::PositiveNumber);
  enumerate->add_option("--count", count, "Number of entries");
  enumerate->add_flag("--pairs", pairs, "List rational pairs instead of quadruples");
  enumerate->add_option("--out", o.out, "Write output to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*run) return cmd_run(scenario, o);
    if (*route) return cmd_route(world, start, label, o);
    if (*tunnel) return cmd_tunnel(world, dump1, dump2, o);
    return cmd_enumerate(from, count, pairs, o);
  } catch (const Error& e) {
    std::cerr << "tunnelmeet: " << e.what() << '\n';
    return e.code() == ErrorCode::kStepBudgetExceeded ? kExitFailed : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "tunnelmeet: " << e.what() << '\n';
    return kExitInput;
  }
}
