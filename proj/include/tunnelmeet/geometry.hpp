#pragma once

// Terrains (rational polygons with holes), exact boundary queries, the
// countable graph G_T over rational interior points, and rendezvous routes
// in the plane built from it.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tunnelmeet/graph.hpp"
#include "tunnelmeet/meeting.hpp"
#include "tunnelmeet/point.hpp"
#include "tunnelmeet/rendezvous.hpp"

namespace tunnelmeet {

using Polygon = std::vector<QPoint>;

/// Closed region: the outer polygon minus the open holes.
class Terrain {
 public:
  /// Throws Error(kInvalidTerrain) unless every polygon is simple with at
  /// least three vertices and non-zero area, holes lie strictly inside the
  /// outer polygon and no two holes touch.
  Terrain(Polygon outer, std::vector<Polygon> holes = {});

  const Polygon& outer() const { return outer_; }
  const std::vector<Polygon>& holes() const { return holes_; }

  /// Every boundary edge, outer and holes alike.
  const std::vector<std::pair<QPoint, QPoint>>& edges() const { return edges_; }

  /// Translated copy.
  Terrain shifted(const QPoint& by) const;

 private:
  Polygon outer_;
  std::vector<Polygon> holes_;
  std::vector<std::pair<QPoint, QPoint>> edges_;
};

enum class Placement { kInterior, kBoundary, kExterior };

Placement classify(const Terrain& t, const QPoint& p);

struct BoundaryHit {
  /// Contact point.
  QPoint w;
  /// Parameter along v -> u: w = v + param (u - v), 0 < param <= 1.
  Rational param;
  /// Squared distance |v w|^2.
  Rational distance_sq;
};

/// First boundary contact on the half-open segment (v, u], grazing included.
/// Throws Error(kStartNotInterior) unless v is interior.
std::optional<BoundaryHit> first_boundary_hit(const Terrain& t, const QPoint& v, const QPoint& u);

// ---------------------------------------------------------------------------
// G_T.

/// p + rational_pair(port).
QPoint gt_target(const QPoint& p, Port port);

struct V1Node {
  QPoint p;
  bool operator==(const V1Node&) const = default;
};
/// Boundary stub reached from `origin` through `port`.
struct V2Node {
  QPoint origin;
  Port port = 0;
  QPoint hit;
  bool operator==(const V2Node& o) const { return origin == o.origin && port == o.port; }
};
using GtNode = std::variant<V1Node, V2Node>;

/// One G_T move from an interior rational point.
GtNode gt_traverse(const Terrain& t, const QPoint& p, Port port);

/// G_T as a port-labeled graph. At a rational interior point p, port k >= 2
/// leads towards p + rational_pair(k) (port 1 would be the zero offset and
/// is not a port): either to that point, entered through the port of the
/// opposite offset, or, if the segment touches the boundary, to a V2 stub
/// of degree 1 whose only port 1 leads back. Points have infinite degree.
/// Ports are 32-bit, so only offsets whose index and whose negation's index
/// fit are ports. Edge lengths are Chebyshev lengths of the segments.
class GtGraph final : public PortLabeledGraph {
 public:
  explicit GtGraph(const Terrain& t) : t_(t) {}

  bool is_port(NodeHandle v, Port p) const override;
  std::optional<std::uint64_t> degree(NodeHandle v) const override;
  EdgeTraversal traverse(NodeHandle v, Port p) const override;
  Rational edge_length(const EdgeId& e) const override;
  std::string node_name(NodeHandle v) const override;
  /// "x,y" with rational coordinates names a point, which must be interior.
  NodeHandle node(std::string_view name) const override;

  NodeHandle point(const QPoint& p) const;
  GtNode at(NodeHandle v) const;
  /// Planar position of a node (the hit point for stubs).
  QPoint position(NodeHandle v) const;

 private:
  struct Hash {
    std::size_t operator()(const GtNode& n) const;
  };

  const Terrain& t_;
  Interner<GtNode, Hash> nodes_;
};

// ---------------------------------------------------------------------------
// Planar routes.

enum class SegmentKind { kFree, kBoundaryHit, kBounceReturn };

struct PlanarSegment {
  QPoint end;
  SegmentKind kind = SegmentKind::kFree;

  bool operator==(const PlanarSegment&) const = default;
};

struct PlanarRoute {
  QPoint start;
  std::vector<PlanarSegment> segments;
  std::vector<std::size_t> phase_marks;

  /// start followed by every segment end.
  std::vector<QPoint> vertices() const;
  bool operator==(const PlanarRoute&) const = default;
};

PlanarRoute to_planar(const GtGraph& g, const Route& r);

/// GraphRV on G_T from `start`. Throws Error(kStartNotInterior) and
/// Error(kStepBudgetExceeded).
PlanarRoute geometric_rv(const Terrain& t, const QPoint& start, Label label, const Limits& limits);

std::pair<PlanarRoute, PlanarRoute> geometric_rv_pair(const Terrain& t, const QPoint& s1, Label l1,
                                                      const QPoint& s2, Label l2, const Limits& limits);

/// Number of containment violations: route points outside the terrain,
/// free segments touching the boundary, hit points off the boundary and
/// boundary hits not immediately undone.
std::size_t containment_violations(const Terrain& t, const PlanarRoute& r);

/// Polyline of rational interior points from u to v whose segments avoid
/// the boundary: the straight segment when it is clear, otherwise a path
/// through centers of grid cells clear of the boundary, refined until one
/// exists, then shortened greedily. Throws Error(kStartNotInterior) and
/// Error(kNoPath).
std::vector<QPoint> rational_path(const Terrain& t, const QPoint& u, const QPoint& v);

/// Quadruple (i, j, s', s'') for a clear polyline: s' lists the G_T ports of
/// its offsets, s'' those of the reversed polyline.
Quadruple polyline_quadruple(std::span<const QPoint> path, Label i, Label j);

struct ApproxResult {
  PlanarRoute r1, r2;
  RendezvousReport report;
};

/// Both agents run GraphRV on G_T in their own frames (origin at their own
/// start), so every route point is start + a rational offset; the suite is
/// then judged against epsilon.
ApproxResult approx_rendezvous(const Terrain& t, const QPoint& s1, const QPoint& s2, Label l1, Label l2,
                               const Rational& epsilon, const Limits& limits,
                               std::span<const StrategyKind> strategies, std::span<const std::uint64_t> seeds);

}  // namespace tunnelmeet
