#pragma once

// JSON documents read and written by the command-line tool.
//
//   graph-v1     {"schema": "graph-v1", "nodes": [...], "edges": [{u, pu, v, pv, len}]}
//   terrain-v1   {"schema": "terrain-v1", "outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}
//   scenario-v1  world, agents, limits, adversary and an optional epsilon
//   verdict-v1   outcome of one scenario run
//
// Rationals are strings "num/den" (or "num"); integers are also accepted on
// input. Schema violations raise Error(kSchema) with the line of the
// offending value.

#include <array>
#include <cstdint>
#include <memory>
#include <ostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelmeet/geometry.hpp"
#include "tunnelmeet/graph.hpp"
#include "tunnelmeet/meeting.hpp"
#include "tunnelmeet/rendezvous.hpp"

namespace tunnelmeet {

GraphSpec parse_graph_spec(std::string_view text);
Terrain parse_terrain(std::string_view text);

enum class WorldKind { kGraph, kGenerator, kTerrain };

struct AgentSpec {
  Label label = 1;
  std::string node;  // graph and generator worlds
  QPoint point;      // terrain worlds
};

struct Scenario {
  WorldKind world = WorldKind::kGraph;
  std::optional<GraphSpec> graph;
  std::optional<GeneratorKind> generator;
  std::optional<Terrain> terrain;
  std::array<AgentSpec, 2> agents;
  Limits limits;
  std::vector<StrategyKind> strategies;
  std::vector<std::uint64_t> seeds;
  std::optional<Rational> epsilon;
};

/// Defaults: every strategy, seeds 0..19, step budget 10^7. phase_cap is
/// required.
Scenario parse_scenario(std::string_view text);

/// A world given on its own: a graph-v1 or terrain-v1 document, or a
/// generator name.
struct World {
  WorldKind kind = WorldKind::kGraph;
  std::optional<FiniteGraph> graph;
  std::unique_ptr<PortLabeledGraph> generator;
  std::optional<Terrain> terrain;

  const PortLabeledGraph& ports() const;
};

World load_world(std::string_view text_or_generator);

struct RunResult {
  WorldKind world = WorldKind::kGraph;
  std::array<Label, 2> labels{};
  std::array<std::string, 2> starts;
  std::array<std::size_t, 2> route_segments{};
  std::array<std::size_t, 2> route_phases{};
  std::optional<std::size_t> tunnel;  // graph worlds
  std::size_t containment_violations = 0;
  std::optional<Rational> epsilon;
  RendezvousReport report;
  /// Location names of graph meetings, parallel to report.entries.
  std::vector<std::optional<std::string>> meeting_names;
};

/// Builds both routes and runs the adversary suite. Throws Error.
RunResult run_scenario(const Scenario& s);

/// verdict-v1 document, two-space indented with sorted keys and a trailing
/// newline. With `with_float` every rational gets a sibling "<key>_float".
std::string verdict_json(const RunResult& r, bool with_float);

/// Planar route dump: "# start x y", "# phase k" and one "x\ty\tkind" line
/// per segment end.
void write_planar_dump(std::ostream& out, const PlanarRoute& r);

}  // namespace tunnelmeet
