#pragma once

// Exact meeting detection between two walks. Time is cut into cells at the
// breakpoints of both walks; inside a cell both agents move affinely, so
// coincidence reduces to a linear equation and the squared planar distance
// to a quadratic.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tunnelmeet/graph.hpp"
#include "tunnelmeet/point.hpp"
#include "tunnelmeet/route.hpp"
#include "tunnelmeet/schedule.hpp"

namespace tunnelmeet {

/// A point of a graph: a node, or the interior point of an edge at
/// `offset` (length units) from the edge's canonical endpoint.
struct GraphLocation {
  std::optional<NodeHandle> node;
  EdgeId edge;
  Rational offset;

  bool operator==(const GraphLocation&) const = default;
};

struct MeetingVerdict {
  bool met = false;
  Rational time;
  std::optional<GraphLocation> location;  // graph walks
  std::optional<QPoint> point;            // planar walks
  /// Both walks are simulated over [0, horizon], the earlier of their end
  /// times (or up to the meeting).
  Rational horizon;
  /// Planar walks only: minimum squared distance over the simulated span.
  std::optional<Rational> min_distance_sq;
};

SegmentLengths route_lengths(const PortLabeledGraph& g, const Route& r);
/// Chebyshev length of each segment of a polyline.
SegmentLengths polyline_lengths(std::span<const QPoint> vertices);

GraphLocation graph_location(const PortLabeledGraph& g, const EdgeTraversal& e, const Rational& lambda);

MeetingVerdict detect_meeting_graph(const PortLabeledGraph& g, const Route& r1, const Route& r2,
                                    ScheduleStream& w1, ScheduleStream& w2);
/// Validates both schedules against their routes first.
MeetingVerdict detect_meeting_graph(const PortLabeledGraph& g, const Route& r1, const Route& r2,
                                    const WalkSchedule& w1, const WalkSchedule& w2);

/// Polylines: vertex 0 is the start, segment m joins vertices m and m + 1.
MeetingVerdict detect_meeting_planar(std::span<const QPoint> p1, std::span<const QPoint> p2, ScheduleStream& w1,
                                     ScheduleStream& w2);
MeetingVerdict detect_meeting_planar(std::span<const QPoint> p1, std::span<const QPoint> p2,
                                     const WalkSchedule& w1, const WalkSchedule& w2);

/// Where a walk is at time t (t within its span).
GraphLocation locate(const PortLabeledGraph& g, const Route& r, ScheduleStream& w, const Rational& t);
QPoint locate(std::span<const QPoint> p, ScheduleStream& w, const Rational& t);

// ---------------------------------------------------------------------------

struct SuiteEntry {
  StrategyKind strategy = StrategyKind::kUnitSpeed;
  std::uint64_t seed = 0;
  MeetingVerdict verdict;
  /// Met (or came within epsilon, planar), and a meeting was confirmed by
  /// replaying both walks to the reported time.
  bool success = false;
  bool sound = true;
};

struct RendezvousReport {
  std::vector<SuiteEntry> entries;
  bool all_met = true;
  /// No entries: all_met holds vacuously.
  bool vacuous = true;
};

RendezvousReport verify_rendezvous(const PortLabeledGraph& g, const Route& r1, const Route& r2,
                                   std::span<const StrategyKind> strategies, std::span<const std::uint64_t> seeds);

/// Success per entry is an exact meeting or, when epsilon is given, a
/// minimum distance of at most epsilon.
RendezvousReport verify_rendezvous_planar(std::span<const QPoint> p1, std::span<const QPoint> p2,
                                          std::span<const StrategyKind> strategies,
                                          std::span<const std::uint64_t> seeds,
                                          const std::optional<Rational>& epsilon = std::nullopt);

}  // namespace tunnelmeet
