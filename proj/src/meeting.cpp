#include "tunnelmeet/meeting.hpp"

#include "tunnelmeet/error.hpp"

namespace tunnelmeet {

namespace {

Rational slope(const Piece& p) { return (p.l1 - p.l0) / (p.t1 - p.t0); }

struct NodeSpan {
  Rational lo, hi;
  NodeHandle node;
};

// When, inside [a, b], the agent sits on a node.
void node_spans(const EdgeTraversal& e, const Rational& la, const Rational& lb, const Rational& a,
                const Rational& b, std::vector<NodeSpan>& out) {
  out.clear();
  if (la == lb) {
    if (la == 0) out.push_back({a, b, e.from});
    if (la == 1) out.push_back({a, b, e.to});
    return;
  }
  if (la == 0) out.push_back({a, a, e.from});
  if (la == 1) out.push_back({a, a, e.to});
  if (lb == 0) out.push_back({b, b, e.from});
  if (lb == 1) out.push_back({b, b, e.to});
}

void check_segment(const Piece& p, std::size_t segments) {
  if (p.segment >= segments) throw Error(ErrorCode::kScheduleMismatch, "walk runs past the end of its route");
}

template <typename Cell, typename AtZero>
Rational sweep(ScheduleStream& w1, ScheduleStream& w2, Cell&& cell, AtZero&& at_zero) {
  auto p1 = w1.next();
  auto p2 = w2.next();
  if (!p1 || !p2) {
    at_zero();
    return 0;
  }
  while (true) {
    const Rational& a = p1->t0 > p2->t0 ? p1->t0 : p2->t0;
    const Rational b = p1->t1 < p2->t1 ? p1->t1 : p2->t1;
    if (cell(*p1, *p2, a, b)) return b;
    const bool advance1 = p1->t1 == b, advance2 = p2->t1 == b;
    if (advance1) p1 = w1.next();
    if (advance2) p2 = w2.next();
    if (!p1 || !p2) return b;
  }
}

}  // namespace

SegmentLengths route_lengths(const PortLabeledGraph& g, const Route& r) {
  return [&g, &r](std::size_t m) { return g.edge_length(r.steps.at(m).edge()); };
}

SegmentLengths polyline_lengths(std::span<const QPoint> vertices) {
  return [vertices](std::size_t m) { return chebyshev(vertices[m], vertices[m + 1]); };
}

GraphLocation graph_location(const PortLabeledGraph& g, const EdgeTraversal& e, const Rational& lambda) {
  if (lambda == 0) return {e.from, {}, 0};
  if (lambda == 1) return {e.to, {}, 0};
  const Rational mu = e.canonical_direction() ? lambda : Rational(1 - lambda);
  return {std::nullopt, e.edge(), mu * g.edge_length(e.edge())};
}

MeetingVerdict detect_meeting_graph(const PortLabeledGraph& g, const Route& r1, const Route& r2,
                                    ScheduleStream& w1, ScheduleStream& w2) {
  MeetingVerdict v;
  std::vector<NodeSpan> s1, s2;
  auto cell = [&](const Piece& p1, const Piece& p2, const Rational& a, const Rational& b) {
    check_segment(p1, r1.steps.size());
    check_segment(p2, r2.steps.size());
    const auto& e1 = r1.steps[p1.segment];
    const auto& e2 = r2.steps[p2.segment];
    const Rational la1 = p1.at(a), lb1 = p1.at(b), la2 = p2.at(a), lb2 = p2.at(b);

    std::optional<Rational> best;
    node_spans(e1, la1, lb1, a, b, s1);
    node_spans(e2, la2, lb2, a, b, s2);
    for (const auto& x : s1) {
      for (const auto& y : s2) {
        if (x.node != y.node) continue;
        const Rational& lo = x.lo > y.lo ? x.lo : y.lo;
        const Rational& hi = x.hi < y.hi ? x.hi : y.hi;
        if (lo <= hi && (!best || lo < *best)) best = lo;
      }
    }
    if (e1.edge() == e2.edge()) {
      // Canonical fractions mu_k(t) = c_k + d_k (t - a).
      const bool f1 = e1.canonical_direction(), f2 = e2.canonical_direction();
      const Rational c1 = f1 ? la1 : Rational(1 - la1), c2 = f2 ? la2 : Rational(1 - la2);
      const Rational d1 = f1 ? slope(p1) : Rational(-slope(p1)), d2 = f2 ? slope(p2) : Rational(-slope(p2));
      const Rational c = c1 - c2, d = d1 - d2;
      std::optional<Rational> t;
      if (d == 0) {
        if (c == 0) t = a;
      } else {
        const Rational tau = -c / d;
        if (tau >= 0 && a + tau <= b) t = a + tau;
      }
      if (t && (!best || *t < *best)) best = t;
    }
    if (!best) return false;
    v.met = true;
    v.time = *best;
    v.location = graph_location(g, e1, p1.at(*best));
    return true;
  };
  auto at_zero = [&] {
    if (r1.start == r2.start) {
      v.met = true;
      v.time = 0;
      v.location = GraphLocation{r1.start, {}, 0};
    }
  };
  v.horizon = sweep(w1, w2, cell, at_zero);
  if (v.met) v.horizon = v.time;
  return v;
}

MeetingVerdict detect_meeting_graph(const PortLabeledGraph& g, const Route& r1, const Route& r2,
                                    const WalkSchedule& w1, const WalkSchedule& w2) {
  validate_schedule(w1);
  validate_schedule(w2);
  if (w1.segments != r1.steps.size() || w2.segments != r2.steps.size()) {
    throw Error(ErrorCode::kScheduleMismatch, "schedule and route disagree on the number of segments");
  }
  auto s1 = stream_of(w1), s2 = stream_of(w2);
  return detect_meeting_graph(g, r1, r2, *s1, *s2);
}

MeetingVerdict detect_meeting_planar(std::span<const QPoint> p1, std::span<const QPoint> p2, ScheduleStream& w1,
                                     ScheduleStream& w2) {
  if (p1.empty() || p2.empty()) throw Error(ErrorCode::kInvalidArgument, "polyline without a start");
  MeetingVerdict v;
  Rational best_sq = norm_sq(p1[0] - p2[0]);
  auto cell = [&](const Piece& q1, const Piece& q2, const Rational& a, const Rational& b) {
    check_segment(q1, p1.size() - 1);
    check_segment(q2, p2.size() - 1);
    const QPoint dir1 = p1[q1.segment + 1] - p1[q1.segment];
    const QPoint dir2 = p2[q2.segment + 1] - p2[q2.segment];
    const QPoint at1 = p1[q1.segment] + q1.at(a) * dir1;
    const QPoint at2 = p2[q2.segment] + q2.at(a) * dir2;
    const QPoint d = at1 - at2;
    const QPoint vel = slope(q1) * dir1 - slope(q2) * dir2;
    const Rational span = b - a;

    std::optional<Rational> tau;
    if (vel == QPoint{0, 0}) {
      if (d == QPoint{0, 0}) tau = Rational(0);
    } else {
      const Rational cand = vel.x != 0 ? Rational(-d.x / vel.x) : Rational(-d.y / vel.y);
      if (cand >= 0 && cand <= span && d + cand * vel == QPoint{0, 0}) tau = cand;
    }
    if (tau) {
      v.met = true;
      v.time = a + *tau;
      v.point = at1 + *tau * (slope(q1) * dir1);
      best_sq = 0;
      return true;
    }
    // |d + tau vel|^2 over tau in [0, span].
    const Rational vv = norm_sq(vel), dv = dot(d, vel);
    auto value = [&](const Rational& x) { return norm_sq(d) + 2 * x * dv + x * x * vv; };
    Rational low = value(0);
    const Rational end = value(span);
    if (end < low) low = end;
    if (vv != 0) {
      const Rational star = -dv / vv;
      if (star > 0 && star < span) {
        const Rational mid = value(star);
        if (mid < low) low = mid;
      }
    }
    if (low < best_sq) best_sq = low;
    return false;
  };
  auto at_zero = [&] {
    if (p1[0] == p2[0]) {
      v.met = true;
      v.time = 0;
      v.point = p1[0];
    }
  };
  v.horizon = sweep(w1, w2, cell, at_zero);
  if (v.met) {
    v.horizon = v.time;
    best_sq = 0;
  }
  v.min_distance_sq = best_sq;
  return v;
}

MeetingVerdict detect_meeting_planar(std::span<const QPoint> p1, std::span<const QPoint> p2,
                                     const WalkSchedule& w1, const WalkSchedule& w2) {
  validate_schedule(w1);
  validate_schedule(w2);
  if (w1.segments + 1 != p1.size() || w2.segments + 1 != p2.size()) {
    throw Error(ErrorCode::kScheduleMismatch, "schedule and polyline disagree on the number of segments");
  }
  auto s1 = stream_of(w1), s2 = stream_of(w2);
  return detect_meeting_planar(p1, p2, *s1, *s2);
}

namespace {

std::optional<Piece> piece_at(ScheduleStream& w, const Rational& t) {
  while (auto p = w.next()) {
    if (p->t0 <= t && t <= p->t1) return p;
  }
  return std::nullopt;
}

}  // namespace

GraphLocation locate(const PortLabeledGraph& g, const Route& r, ScheduleStream& w, const Rational& t) {
  const auto p = piece_at(w, t);
  if (!p) {
    if (t == 0) return {r.start, {}, 0};
    throw Error(ErrorCode::kInvalidArgument, "time outside the walk");
  }
  return graph_location(g, r.steps.at(p->segment), p->at(t));
}

QPoint locate(std::span<const QPoint> poly, ScheduleStream& w, const Rational& t) {
  const auto p = piece_at(w, t);
  if (!p) {
    if (t == 0) return poly[0];
    throw Error(ErrorCode::kInvalidArgument, "time outside the walk");
  }
  return poly[p->segment] + p->at(t) * (poly[p->segment + 1] - poly[p->segment]);
}

// ---------------------------------------------------------------------------

RendezvousReport verify_rendezvous(const PortLabeledGraph& g, const Route& r1, const Route& r2,
                                   std::span<const StrategyKind> strategies, std::span<const std::uint64_t> seeds) {
  RendezvousReport report;
  for (const auto kind : strategies) {
    for (const auto seed : seeds) {
      const auto [a1, a2] = strategy_pair(kind, seed);
      auto w1 = make_stream(a1, route_lengths(g, r1), r1.steps.size());
      auto w2 = make_stream(a2, route_lengths(g, r2), r2.steps.size());
      SuiteEntry entry{kind, seed, detect_meeting_graph(g, r1, r2, *w1, *w2), false, true};
      if (entry.verdict.met) {
        auto x1 = make_stream(a1, route_lengths(g, r1), r1.steps.size());
        auto x2 = make_stream(a2, route_lengths(g, r2), r2.steps.size());
        const auto& t = entry.verdict.time;
        const auto l1 = locate(g, r1, *x1, t), l2 = locate(g, r2, *x2, t);
        entry.sound = l1 == l2 && l1 == *entry.verdict.location;
      }
      entry.success = entry.verdict.met && entry.sound;
      report.all_met = report.all_met && entry.success;
      report.entries.push_back(std::move(entry));
    }
  }
  report.vacuous = report.entries.empty();
  return report;
}

RendezvousReport verify_rendezvous_planar(std::span<const QPoint> p1, std::span<const QPoint> p2,
                                          std::span<const StrategyKind> strategies,
                                          std::span<const std::uint64_t> seeds,
                                          const std::optional<Rational>& epsilon) {
  RendezvousReport report;
  for (const auto kind : strategies) {
    for (const auto seed : seeds) {
      const auto [a1, a2] = strategy_pair(kind, seed);
      auto w1 = make_stream(a1, polyline_lengths(p1), p1.size() - 1);
      auto w2 = make_stream(a2, polyline_lengths(p2), p2.size() - 1);
      SuiteEntry entry{kind, seed, detect_meeting_planar(p1, p2, *w1, *w2), false, true};
      if (entry.verdict.met) {
        auto x1 = make_stream(a1, polyline_lengths(p1), p1.size() - 1);
        auto x2 = make_stream(a2, polyline_lengths(p2), p2.size() - 1);
        const auto& t = entry.verdict.time;
        const QPoint q1 = locate(p1, *x1, t), q2 = locate(p2, *x2, t);
        entry.sound = q1 == q2 && q1 == *entry.verdict.point;
      }
      const bool close = epsilon && *entry.verdict.min_distance_sq <= *epsilon * *epsilon;
      entry.success = entry.sound && (entry.verdict.met || close);
      report.all_met = report.all_met && entry.success;
      report.entries.push_back(std::move(entry));
    }
  }
  report.vacuous = report.entries.empty();
  return report;
}

}  // namespace tunnelmeet
