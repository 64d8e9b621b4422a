#pragma once

// Routes in port-labeled graphs: the sequence of directed edge traversals an
// agent commits to, split into phases.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tunnelmeet/graph.hpp"

namespace tunnelmeet {

struct Route {
  NodeHandle start;
  std::vector<EdgeTraversal> steps;
  /// phase_marks[k - 1] is the step index at which phase k begins. The route
  /// covers exactly phase_marks.size() completed phases.
  std::vector<std::size_t> phase_marks;

  std::size_t phases() const { return phase_marks.size(); }
  bool empty() const { return steps.empty(); }
  NodeHandle end() const { return steps.empty() ? start : steps.back().to; }

  /// Steps belonging to the first p phases; p <= phases().
  std::size_t prefix_length(std::size_t p) const;
  /// First p phases as a route of its own.
  Route phase_prefix(std::size_t p) const;

  bool operator==(const Route&) const = default;
};

/// Steps in reverse order, each traversal reversed. Phase marks are dropped:
/// a reversed route is not a phase sequence.
Route reverse_route(const Route& r);

/// Appends `tail`, whose start must be r.end(); phase marks of `tail` are
/// carried over shifted.
void append(Route& r, const Route& tail);

/// Chain check plus every traversal replayed through the oracle. Throws
/// Error(kInvalidArgument) naming the first bad step.
void validate_route(const PortLabeledGraph& g, const Route& r);

/// Phases whose first step does not leave from the start node, plus
/// phases() + 1 if the whole route does not end there.
std::vector<std::size_t> phase_closure_violations(const Route& r);

/// One traversal per line `from<TAB>out_port<TAB>to<TAB>in_port`, preceded by
/// `# start <name>` and with `# phase k` before the steps of phase k.
void write_route_dump(std::ostream& out, const PortLabeledGraph& g, const Route& r);
Route read_route_dump(std::istream& in, const PortLabeledGraph& g);

}  // namespace tunnelmeet
