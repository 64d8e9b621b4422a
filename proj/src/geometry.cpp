#include "tunnelmeet/geometry.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "tunnelmeet/enumeration.hpp"
#include "tunnelmeet/error.hpp"

namespace tunnelmeet {

namespace {

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

int orientation(const QPoint& a, const QPoint& b, const QPoint& c) { return sign(cross(b - a, c - a)); }

bool on_segment(const QPoint& p, const QPoint& a, const QPoint& b) {
  if (orientation(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// Closed segments [a, b] and [c, d] share a point.
bool segments_touch(const QPoint& a, const QPoint& b, const QPoint& c, const QPoint& d) {
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

// Crossing-number test; p must not lie on the polygon.
bool strictly_inside(const Polygon& poly, const QPoint& p) {
  bool inside = false;
  for (std::size_t k = 0, n = poly.size(); k < n; ++k) {
    const QPoint& a = poly[k];
    const QPoint& b = poly[(k + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const Rational x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

bool on_polygon(const Polygon& poly, const QPoint& p) {
  for (std::size_t k = 0, n = poly.size(); k < n; ++k) {
    if (on_segment(p, poly[k], poly[(k + 1) % n])) return true;
  }
  return false;
}

void check_simple(const Polygon& poly, const std::string& what) {
  const std::size_t n = poly.size();
  if (n < 3) throw Error(ErrorCode::kInvalidTerrain, what + " needs at least three vertices");
  Rational area2 = 0;
  for (std::size_t k = 0; k < n; ++k) area2 += cross(poly[k], poly[(k + 1) % n]);
  if (area2 == 0) throw Error(ErrorCode::kInvalidTerrain, what + " has zero area");
  for (std::size_t a = 0; a < n; ++a) {
    const QPoint &p = poly[a], &q = poly[(a + 1) % n];
    if (p == q) throw Error(ErrorCode::kInvalidTerrain, what + " repeats a vertex");
    for (std::size_t b = a + 1; b < n; ++b) {
      const QPoint &r = poly[b], &s = poly[(b + 1) % n];
      const bool adjacent = b == a + 1 || (a == 0 && b == n - 1);
      if (!adjacent) {
        if (segments_touch(p, q, r, s)) throw Error(ErrorCode::kInvalidTerrain, what + " is not simple");
      } else {
        // Adjacent edges share one vertex; anything more is an overlap.
        const QPoint& shared = b == a + 1 ? q : p;
        const QPoint& far1 = b == a + 1 ? p : q;
        const QPoint& far2 = b == a + 1 ? s : r;
        if (orientation(far1, shared, far2) == 0 && dot(far1 - shared, far2 - shared) > 0) {
          throw Error(ErrorCode::kInvalidTerrain, what + " folds back on itself");
        }
      }
    }
  }
}

}  // namespace

Terrain::Terrain(Polygon outer, std::vector<Polygon> holes) : outer_(std::move(outer)), holes_(std::move(holes)) {
  check_simple(outer_, "outer polygon");
  for (std::size_t h = 0; h < holes_.size(); ++h) {
    const std::string name = "hole " + std::to_string(h + 1);
    check_simple(holes_[h], name);
    for (const auto& p : holes_[h]) {
      if (on_polygon(outer_, p) || !strictly_inside(outer_, p)) {
        throw Error(ErrorCode::kInvalidTerrain, name + " is not strictly inside the outer polygon");
      }
    }
  }
  auto polygons = std::vector<const Polygon*>{&outer_};
  for (const auto& h : holes_) polygons.push_back(&h);
  for (std::size_t a = 0; a < polygons.size(); ++a) {
    for (std::size_t b = a + 1; b < polygons.size(); ++b) {
      const Polygon &pa = *polygons[a], &pb = *polygons[b];
      for (std::size_t x = 0; x < pa.size(); ++x) {
        for (std::size_t y = 0; y < pb.size(); ++y) {
          if (segments_touch(pa[x], pa[(x + 1) % pa.size()], pb[y], pb[(y + 1) % pb.size()])) {
            throw Error(ErrorCode::kInvalidTerrain, "boundaries of two polygons touch");
          }
        }
      }
      if (a > 0 && (strictly_inside(pa, pb[0]) || strictly_inside(pb, pa[0]))) {
        throw Error(ErrorCode::kInvalidTerrain, "holes are nested");
      }
    }
  }
  for (const auto* poly : polygons) {
    for (std::size_t k = 0; k < poly->size(); ++k) edges_.emplace_back((*poly)[k], (*poly)[(k + 1) % poly->size()]);
  }
}

Terrain Terrain::shifted(const QPoint& by) const {
  auto move = [&by](Polygon p) {
    for (auto& q : p) q = q + by;
    return p;
  };
  std::vector<Polygon> holes;
  for (const auto& h : holes_) holes.push_back(move(h));
  return Terrain(move(outer_), std::move(holes));
}

Placement classify(const Terrain& t, const QPoint& p) {
  for (const auto& [a, b] : t.edges()) {
    if (on_segment(p, a, b)) return Placement::kBoundary;
  }
  if (!strictly_inside(t.outer(), p)) return Placement::kExterior;
  for (const auto& h : t.holes()) {
    if (strictly_inside(h, p)) return Placement::kExterior;
  }
  return Placement::kInterior;
}

std::optional<BoundaryHit> first_boundary_hit(const Terrain& t, const QPoint& v, const QPoint& u) {
  if (classify(t, v) != Placement::kInterior) {
    throw Error(ErrorCode::kStartNotInterior, to_string(v) + " is not an interior point");
  }
  if (u == v) throw Error(ErrorCode::kInvalidArgument, "degenerate segment");
  const QPoint d = u - v;
  std::optional<Rational> best;
  for (const auto& [a, b] : t.edges()) {
    const QPoint e = b - a, av = a - v;
    const Rational den = cross(d, e);
    std::optional<Rational> hit;
    if (den != 0) {
      const Rational s = cross(av, d) / den;
      const Rational param = cross(av, e) / den;
      if (s >= 0 && s <= 1 && param > 0 && param <= 1) hit = param;
    } else if (cross(av, d) == 0) {
      // Collinear: the overlap starts at the nearer endpoint (v is interior,
      // so the edge cannot reach back over v).
      const Rational dd = norm_sq(d);
      const Rational ta = dot(av, d) / dd, tb = dot(b - v, d) / dd;
      const Rational lo = std::min(ta, tb);
      if (lo > 0 && lo <= 1) hit = lo;
    }
    if (hit && (!best || *hit < *best)) best = hit;
  }
  if (!best) return std::nullopt;
  return BoundaryHit{v + *best * d, *best, *best * *best * norm_sq(d)};
}

// ---------------------------------------------------------------------------

QPoint gt_target(const QPoint& p, Port port) {
  const auto z = rational_pair(port);
  return {p.x + z.q1, p.y + z.q2};
}

GtNode gt_traverse(const Terrain& t, const QPoint& p, Port port) {
  const QPoint u = gt_target(p, port);
  if (u == p) throw Error(ErrorCode::kInvalidPort, "port 1 is the zero offset");
  if (auto hit = first_boundary_hit(t, p, u)) return V2Node{p, port, hit->w};
  return V1Node{u};
}

namespace {

std::optional<Port> opposite_port(Port port) {
  const auto z = rational_pair(port);
  try {
    const std::uint64_t back = rational_pair_index({-z.q1, -z.q2});
    if (back > std::numeric_limits<Port>::max()) return std::nullopt;
    return static_cast<Port>(back);
  } catch (const Error&) {
    return std::nullopt;
  }
}

QPoint parse_point(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorCode::kUnknownNode, "'" + std::string(text) + "'");
  try {
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kUnknownNode, "'" + std::string(text) + "'");
  }
}

std::string point_name(const QPoint& p) { return to_string(p.x) + "," + to_string(p.y); }

}  // namespace

std::size_t GtGraph::Hash::operator()(const GtNode& n) const {
  if (const auto* v1 = std::get_if<V1Node>(&n)) return QPointHash()(v1->p);
  const auto& v2 = std::get<V2Node>(n);
  return QPointHash()(v2.origin) * 7919 ^ std::hash<Port>()(v2.port);
}

GtNode GtGraph::at(NodeHandle v) const {
  auto n = nodes_.lookup(v);
  if (!n) throw Error(ErrorCode::kUnknownNode, "handle " + std::to_string(v.id));
  return *n;
}

bool GtGraph::is_port(NodeHandle v, Port p) const {
  const GtNode n = at(v);
  if (std::holds_alternative<V2Node>(n)) return p == 1;
  return p >= 2 && opposite_port(p).has_value();
}

std::optional<std::uint64_t> GtGraph::degree(NodeHandle v) const {
  if (std::holds_alternative<V2Node>(at(v))) return 1;
  return std::nullopt;
}

EdgeTraversal GtGraph::traverse(NodeHandle v, Port p) const {
  if (!is_port(v, p)) throw Error(ErrorCode::kInvalidPort, std::to_string(p) + " at " + node_name(v));
  const GtNode n = at(v);
  if (const auto* stub = std::get_if<V2Node>(&n)) {
    return {v, 1, nodes_.intern(V1Node{stub->origin}), stub->port};
  }
  const QPoint& origin = std::get<V1Node>(n).p;
  const GtNode next = gt_traverse(t_, origin, p);
  if (std::holds_alternative<V2Node>(next)) return {v, p, nodes_.intern(next), 1};
  return {v, p, nodes_.intern(next), *opposite_port(p)};
}

Rational GtGraph::edge_length(const EdgeId& e) const {
  const EdgeTraversal t = traverse(e.node, e.port);
  return chebyshev(position(t.from), position(t.to));
}

std::string GtGraph::node_name(NodeHandle v) const {
  const GtNode n = at(v);
  if (const auto* v1 = std::get_if<V1Node>(&n)) return point_name(v1->p);
  const auto& v2 = std::get<V2Node>(n);
  return "hit:" + point_name(v2.origin) + "#" + std::to_string(v2.port);
}

NodeHandle GtGraph::node(std::string_view name) const {
  if (name.rfind("hit:", 0) == 0) {
    const auto hash = name.find('#');
    if (hash == std::string_view::npos) throw Error(ErrorCode::kUnknownNode, "'" + std::string(name) + "'");
    const QPoint origin = parse_point(name.substr(4, hash - 4));
    const Port port = static_cast<Port>(std::stoul(std::string(name.substr(hash + 1))));
    const GtNode n = gt_traverse(t_, origin, port);
    if (!std::holds_alternative<V2Node>(n)) throw Error(ErrorCode::kUnknownNode, "'" + std::string(name) + "'");
    return nodes_.intern(n);
  }
  return point(parse_point(name));
}

NodeHandle GtGraph::point(const QPoint& p) const {
  if (classify(t_, p) != Placement::kInterior) {
    throw Error(ErrorCode::kStartNotInterior, to_string(p) + " is not an interior point");
  }
  return nodes_.intern(V1Node{p});
}

QPoint GtGraph::position(NodeHandle v) const {
  const GtNode n = at(v);
  if (const auto* v1 = std::get_if<V1Node>(&n)) return v1->p;
  return std::get<V2Node>(n).hit;
}

// ---------------------------------------------------------------------------

std::vector<QPoint> PlanarRoute::vertices() const {
  std::vector<QPoint> out{start};
  for (const auto& s : segments) out.push_back(s.end);
  return out;
}

PlanarRoute to_planar(const GtGraph& g, const Route& r) {
  PlanarRoute out{g.position(r.start), {}, r.phase_marks};
  out.segments.reserve(r.steps.size());
  for (const auto& e : r.steps) {
    const GtNode from = g.at(e.from), to = g.at(e.to);
    SegmentKind kind = SegmentKind::kFree;
    if (std::holds_alternative<V2Node>(to)) kind = SegmentKind::kBoundaryHit;
    if (std::holds_alternative<V2Node>(from)) kind = SegmentKind::kBounceReturn;
    out.segments.push_back({g.position(e.to), kind});
  }
  return out;
}

PlanarRoute geometric_rv(const Terrain& t, const QPoint& start, Label label, const Limits& limits) {
  const GtGraph g(t);
  return to_planar(g, graph_rv(g, g.point(start), label, limits));
}

std::pair<PlanarRoute, PlanarRoute> geometric_rv_pair(const Terrain& t, const QPoint& s1, Label l1,
                                                      const QPoint& s2, Label l2, const Limits& limits) {
  const GtGraph g(t);
  const auto [r1, r2] = graph_rv_pair(g, g.point(s1), l1, g.point(s2), l2, limits);
  return {to_planar(g, r1), to_planar(g, r2)};
}

std::size_t containment_violations(const Terrain& t, const PlanarRoute& r) {
  std::size_t bad = 0;
  if (classify(t, r.start) != Placement::kInterior) ++bad;
  QPoint at = r.start;
  for (std::size_t m = 0; m < r.segments.size(); ++m) {
    const auto& s = r.segments[m];
    switch (s.kind) {
      case SegmentKind::kFree: {
        if (classify(t, s.end) != Placement::kInterior) ++bad;
        if (classify(t, at) != Placement::kInterior || first_boundary_hit(t, at, s.end)) ++bad;
        break;
      }
      case SegmentKind::kBoundaryHit: {
        if (classify(t, s.end) != Placement::kBoundary) ++bad;
        if (classify(t, at) != Placement::kInterior) {
          ++bad;
        } else {
          const auto hit = first_boundary_hit(t, at, s.end);
          if (!hit || hit->w != s.end) ++bad;
        }
        const bool undone = m + 1 < r.segments.size() && r.segments[m + 1].kind == SegmentKind::kBounceReturn &&
                            r.segments[m + 1].end == at;
        if (!undone) ++bad;
        break;
      }
      case SegmentKind::kBounceReturn:
        if (m == 0 || r.segments[m - 1].kind != SegmentKind::kBoundaryHit) ++bad;
        if (classify(t, s.end) != Placement::kInterior) ++bad;
        break;
    }
    at = s.end;
  }
  return bad;
}

// ---------------------------------------------------------------------------

namespace {

bool clear(const Terrain& t, const QPoint& a, const QPoint& b) { return a == b || !first_boundary_hit(t, a, b); }

// Closed axis-aligned square [x, x + h] x [y, y + h] shares no point with
// the boundary.
bool square_clear(const Terrain& t, const QPoint& lo, const Rational& h) {
  const QPoint c1 = lo, c2{lo.x + h, lo.y}, c3{lo.x + h, lo.y + h}, c4{lo.x, lo.y + h};
  for (const auto& [a, b] : t.edges()) {
    for (const auto& p : {a, b}) {
      if (p.x >= lo.x && p.x <= lo.x + h && p.y >= lo.y && p.y <= lo.y + h) return false;
    }
    if (segments_touch(a, b, c1, c2) || segments_touch(a, b, c2, c3) || segments_touch(a, b, c3, c4) ||
        segments_touch(a, b, c4, c1)) {
      return false;
    }
  }
  return true;
}

std::vector<QPoint> shorten(const Terrain& t, const std::vector<QPoint>& path) {
  std::vector<QPoint> out{path.front()};
  std::size_t at = 0;
  while (at + 1 < path.size()) {
    std::size_t next = path.size() - 1;
    while (next > at + 1 && !clear(t, path[at], path[next])) --next;
    out.push_back(path[next]);
    at = next;
  }
  return out;
}

}  // namespace

std::vector<QPoint> rational_path(const Terrain& t, const QPoint& u, const QPoint& v) {
  for (const auto& p : {u, v}) {
    if (classify(t, p) != Placement::kInterior) {
      throw Error(ErrorCode::kStartNotInterior, to_string(p) + " is not an interior point");
    }
  }
  if (u == v) return {u};
  if (clear(t, u, v)) return {u, v};

  Rational minx = t.outer()[0].x, maxx = minx, miny = t.outer()[0].y, maxy = miny;
  for (const auto& p : t.outer()) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const Rational side = std::max(maxx - minx, maxy - miny);

  for (int level = 2; level <= 12; ++level) {
    const long cells = 1L << level;
    const Rational h = side / cells;
    auto corner = [&](long i, long j) { return QPoint{minx + h * i, miny + h * j}; };
    auto center = [&](long i, long j) { return corner(i, j) + QPoint{h / 2, h / 2}; };
    std::map<std::pair<long, long>, bool> safe;
    auto is_safe = [&](long i, long j) {
      if (i < 0 || j < 0 || i >= cells || j >= cells) return false;
      auto [it, inserted] = safe.try_emplace({i, j}, false);
      if (inserted) {
        it->second = classify(t, center(i, j)) == Placement::kInterior && square_clear(t, corner(i, j), h);
      }
      return it->second;
    };
    // Cells an endpoint can reach in a straight clear line.
    auto anchors = [&](const QPoint& p) {
      std::set<std::pair<long, long>> out;
      for (long i = 0; i < cells; ++i) {
        for (long j = 0; j < cells; ++j) {
          if (is_safe(i, j) && clear(t, p, center(i, j))) out.insert({i, j});
        }
      }
      return out;
    };
    const auto from = anchors(u), to = anchors(v);
    if (from.empty() || to.empty()) continue;

    std::map<std::pair<long, long>, std::pair<long, long>> parent;
    std::deque<std::pair<long, long>> queue;
    for (const auto& c : from) {
      parent[c] = c;
      queue.push_back(c);
    }
    std::optional<std::pair<long, long>> goal;
    while (!queue.empty() && !goal) {
      const auto c = queue.front();
      queue.pop_front();
      if (to.count(c)) {
        goal = c;
        break;
      }
      for (const auto& [di, dj] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
        const std::pair<long, long> n{c.first + di, c.second + dj};
        if (!parent.count(n) && is_safe(n.first, n.second)) {
          parent[n] = c;
          queue.push_back(n);
        }
      }
    }
    if (!goal) continue;
    std::vector<QPoint> path{v};
    for (auto c = *goal;; c = parent[c]) {
      path.push_back(center(c.first, c.second));
      if (parent[c] == c) break;
    }
    path.push_back(u);
    std::reverse(path.begin(), path.end());
    return shorten(t, path);
  }
  throw Error(ErrorCode::kNoPath, "no clear polyline found between " + to_string(u) + " and " + to_string(v));
}

Quadruple polyline_quadruple(std::span<const QPoint> path, Label i, Label j) {
  Quadruple q{i, j, {}, {}};
  auto port_of = [](const QPoint& z) {
    const std::uint64_t k = rational_pair_index({z.x, z.y});
    if (k > std::numeric_limits<Port>::max()) throw Error(ErrorCode::kInvalidArgument, "offset beyond 32-bit ports");
    return static_cast<std::uint32_t>(k);
  };
  for (std::size_t m = 0; m + 1 < path.size(); ++m) q.s_prime.push_back(port_of(path[m + 1] - path[m]));
  for (std::size_t m = path.size() - 1; m > 0; --m) q.s_dprime.push_back(port_of(path[m - 1] - path[m]));
  validate(q);
  return q;
}

ApproxResult approx_rendezvous(const Terrain& t, const QPoint& s1, const QPoint& s2, Label l1, Label l2,
                               const Rational& epsilon, const Limits& limits,
                               std::span<const StrategyKind> strategies, std::span<const std::uint64_t> seeds) {
  if (l1 == l2) throw Error(ErrorCode::kInvalidArgument, "agents must carry different labels");
  if (epsilon <= 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  auto own_frame = [&](const QPoint& s, Label l) {
    const Terrain local = t.shifted(QPoint{0, 0} - s);
    PlanarRoute r = geometric_rv(local, {0, 0}, l, limits);
    r.start = r.start + s;
    for (auto& seg : r.segments) seg.end = seg.end + s;
    return r;
  };
  ApproxResult out{own_frame(s1, l1), own_frame(s2, l2), {}};
  const auto p1 = out.r1.vertices(), p2 = out.r2.vertices();
  out.report = verify_rendezvous_planar(p1, p2, strategies, seeds, epsilon);
  return out;
}

}  // namespace tunnelmeet
