#pragma once

// Route construction for rendezvous in port-labeled graphs, and the tunnel
// certificate that guarantees two routes meet under any walk schedule.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tunnelmeet/enumeration.hpp"
#include "tunnelmeet/graph.hpp"
#include "tunnelmeet/route.hpp"

namespace tunnelmeet {

inline constexpr std::uint64_t kDefaultStepBudget = 10'000'000;

struct Limits {
  /// Number of phases built in main mode.
  std::uint64_t phase_cap = 0;
  /// Longest route any single construction may produce.
  std::uint64_t step_budget = kDefaultStepBudget;
};

/// Shared phase table phi(1), phi(2), ... grown on demand.
class QuadrupleTable {
 public:
  const Quadruple& at(std::size_t k);

 private:
  QuadrupleCursor cursor_;
  std::vector<Quadruple> table_;
};

/// Main-mode construction with memoized simulations. Phase k of the route of
/// (v, l) embeds the first k - 1 phases of some other agent's route; those
/// are the cached prefix of that agent's own main-mode route, so each
/// (node, label) route is built once and reused.
class RouteBuilder {
 public:
  explicit RouteBuilder(const PortLabeledGraph& g, std::uint64_t step_budget = kDefaultStepBudget);

  /// Route of an agent with label l starting at v after `phases` phases.
  /// Throws Error(kStepBudgetExceeded) when any route involved would exceed
  /// the budget.
  Route route(NodeHandle v, Label l, std::size_t phases);

  QuadrupleTable& quadruples() { return table_; }

 private:
  const Route& ensure(NodeHandle v, Label l, std::size_t phases);
  void run_phase(Route& r, Label l, std::size_t k);

  const PortLabeledGraph& g_;
  std::uint64_t budget_;
  QuadrupleTable table_;
  std::map<std::pair<std::uint32_t, Label>, Route> cache_;
};

/// GraphRV: main mode through limits.phase_cap phases.
Route graph_rv(const PortLabeledGraph& g, NodeHandle v, Label l, const Limits& limits);

/// Routes of two agents, sharing one simulation cache. Labels must differ.
std::pair<Route, Route> graph_rv_pair(const PortLabeledGraph& g, NodeHandle v1, Label l1, NodeHandle v2,
                                      Label l2, const Limits& limits);

/// GraphRVREC, evaluated literally: every simulation is recomputed by a
/// recursive call. In main mode (mode = true) it runs limits.phase_cap
/// phases, otherwise p phases.
Route graph_rv_rec(const PortLabeledGraph& g, NodeHandle v, Label l, std::size_t p, bool mode,
                   const Limits& limits);

// ---------------------------------------------------------------------------

struct TunnelCertificate {
  std::size_t n = 0;
  /// The first n steps of the first route.
  std::vector<EdgeTraversal> meeting_path;
};

/// True when the first n steps of r1 are the first n steps of r2 read
/// backwards with every traversal reversed (n = 0: same start).
bool is_tunnel_at(const Route& r1, const Route& r2, std::size_t n);

/// Smallest n with is_tunnel_at(r1, r2, n), if any.
std::optional<TunnelCertificate> tunnel_check(const Route& r1, const Route& r2);

// ---------------------------------------------------------------------------

/// Quadruple (i, j, s', s'') describing `path` from its start: s' are the exit
/// ports, s'' the entry ports read from the far end back.
Quadruple path_quadruple(const std::vector<EdgeTraversal>& path, Label i, Label j);

/// Among the shortest v -> w paths of a finite graph, the one whose
/// quadruple has the smallest phi index. Requires v != w, i < j.
Quadruple connecting_quadruple(const FiniteGraph& g, NodeHandle v, NodeHandle w, Label i, Label j);

}  // namespace tunnelmeet
