#include <gtest/gtest.h>

#include <numeric>

#include "tunnelmeet/error.hpp"
#include "tunnelmeet/meeting.hpp"
#include "tunnelmeet/random.hpp"
#include "tunnelmeet/rendezvous.hpp"
#include "tunnelmeet/schedule.hpp"

using namespace tunnelmeet;

namespace {

SegmentLengths ones() {
  return [](std::size_t) { return Rational(1); };
}

SegmentLengths mixed() {
  return [](std::size_t m) { return Rational(static_cast<long>(1 + m % 3), static_cast<long>(2 + m % 2)); };
}

std::vector<Piece> drain(ScheduleStream& s) {
  std::vector<Piece> out;
  while (auto p = s.next()) out.push_back(*p);
  return out;
}

const std::vector<std::uint64_t> kSeeds = [] {
  std::vector<std::uint64_t> s(20);
  std::iota(s.begin(), s.end(), 0);
  return s;
}();

}  // namespace

TEST(Schedule, UnitSpeedSingleSegment) {
  const auto w = make_schedule({StrategyKind::kUnitSpeed}, ones(), 1);
  EXPECT_EQ(w.breakpoints, (std::vector<Breakpoint>{{0, 0}, {1, 1}}));
  validate_schedule(w);
}

TEST(Schedule, EveryStrategyIsValid) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto kind = kAllStrategies[seed % 5];
    const auto [a, b] = strategy_pair(kind, seed);
    const std::size_t n = 1 + seed % 7;
    for (const auto& s : {a, b}) {
      const auto w = make_schedule(s, mixed(), n);
      ASSERT_NO_THROW(validate_schedule(w)) << strategy_name(kind) << " seed " << seed;
      EXPECT_EQ(w.breakpoints.back().position, Rational(static_cast<long>(n)));
      EXPECT_EQ(segment_completion(w).size(), n);
    }
  }
}

TEST(Schedule, JitterMovesBackwards) {
  const auto w = make_schedule({StrategyKind::kJitter, 5}, ones(), 3);
  bool backwards = false;
  for (std::size_t k = 1; k < w.breakpoints.size(); ++k) {
    backwards = backwards || w.breakpoints[k].position < w.breakpoints[k - 1].position;
  }
  EXPECT_TRUE(backwards);
}

TEST(Schedule, AlternatingNeverMovesBoth) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto [a, b] = strategy_pair(StrategyKind::kAlternating, seed);
    auto s1 = make_stream(a, mixed(), 1 + seed % 9);
    auto s2 = make_stream(b, ones(), 1 + seed % 5);
    const auto p1 = drain(*s1), p2 = drain(*s2);
    for (const auto& x : p1) {
      if (x.l0 == x.l1) continue;
      for (const auto& y : p2) {
        if (y.l0 == y.l1) continue;
        EXPECT_TRUE(x.t1 <= y.t0 || y.t1 <= x.t0);
      }
    }
  }
}

TEST(Schedule, FrozenPrefixWaits) {
  const auto [a, b] = strategy_pair(StrategyKind::kFrozenPrefix, 11);
  EXPECT_TRUE((a.freeze > 0) != (b.freeze > 0));
  const auto& frozen = a.freeze > 0 ? a : b;
  const auto w = make_schedule(frozen, ones(), 2);
  EXPECT_EQ(w.breakpoints[1], (Breakpoint{frozen.freeze, 0}));
}

TEST(Schedule, ValidatorRejects) {
  EXPECT_THROW(validate_schedule({1, {{0, 0}, {0, 1}}}), Error);
  EXPECT_THROW(validate_schedule({1, {{1, 0}, {2, 1}}}), Error);
  EXPECT_THROW(validate_schedule({1, {{0, 0}, {1, Rational(1, 2)}}}), Error);
  EXPECT_THROW(validate_schedule({2, {{0, 0}, {1, 1}, {2, Rational(1, 2)}, {3, 2}}}), Error);
  EXPECT_THROW(validate_schedule({1, {{0, 0}, {1, 1}, {2, 1}}}), Error);
  EXPECT_NO_THROW(validate_schedule({1, {{0, 0}, {1, Rational(3, 4)}, {2, Rational(1, 4)}, {3, 1}}}));
  try {
    validate_schedule({1, {{0, 0}, {1, 2}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScheduleMismatch);
  }
}

TEST(Schedule, PositionLookup) {
  const WalkSchedule w{2, {{0, 0}, {2, 1}, {3, 1}, {4, 2}}};
  EXPECT_EQ(position_at(w, 1), Rational(1, 2));
  EXPECT_EQ(position_at(w, Rational(5, 2)), 1);
  EXPECT_EQ(position_at(w, 10), 2);
}

TEST(MeetingGraph, HeadOnK2) {
  const auto g = FiniteGraph::build({{"A", "B"}, {{"A", 1, "B", 1}}});
  const auto a = g.node("A"), b = g.node("B");
  const Route r1{a, {g.traverse(a, 1)}, {}}, r2{b, {g.traverse(b, 1)}, {}};
  const WalkSchedule w{1, {{0, 0}, {1, 1}}};
  const auto v = detect_meeting_graph(g, r1, r2, w, w);
  ASSERT_TRUE(v.met);
  EXPECT_EQ(v.time, Rational(1, 2));
  EXPECT_FALSE(v.location->node);
  EXPECT_EQ(v.location->offset, Rational(1, 2));
}

TEST(MeetingGraph, NodeMeetingAcrossEdges) {
  // Path a - b - c: agents walk inwards at different speeds, reaching b together.
  const auto g = FiniteGraph::build({{"a", "b", "c"}, {{"a", 1, "b", 1}, {"b", 2, "c", 1}}});
  const Route r1{g.node("a"), {g.traverse(g.node("a"), 1)}, {}};
  const Route r2{g.node("c"), {g.traverse(g.node("c"), 1)}, {}};
  const auto v = detect_meeting_graph(g, r1, r2, WalkSchedule{1, {{0, 0}, {1, Rational(1, 2)}, {3, 1}}},
                                      WalkSchedule{1, {{0, 0}, {3, 1}}});
  ASSERT_TRUE(v.met);
  EXPECT_EQ(v.time, 3);
  EXPECT_EQ(v.location->node, g.node("b"));
}

TEST(MeetingGraph, ChasingOnSameEdge) {
  const auto g = FiniteGraph::build({{"a", "b"}, {{"a", 1, "b", 1, Rational(2)}}});
  const Route r{g.node("a"), {g.traverse(g.node("a"), 1)}, {}};
  // Second agent waits, first overtakes it at lambda = 1/4, t = 1.
  const auto v = detect_meeting_graph(g, r, r, WalkSchedule{1, {{0, 0}, {4, 1}}},
                                      WalkSchedule{1, {{0, 0}, {Rational(1, 2), Rational(1, 4)},
                                                       {6, Rational(1, 4)}, {7, 1}}});
  ASSERT_TRUE(v.met);
  EXPECT_EQ(v.time, 0);  // same start
  const Route other{g.node("b"), {g.traverse(g.node("b"), 1)}, {}};
  EXPECT_THROW(detect_meeting_graph(g, r, other, WalkSchedule{2, {{0, 0}, {1, 1}}}, WalkSchedule{1, {{0, 0}, {1, 1}}}),
               Error);
}

TEST(MeetingGraph, WalkingAwayNeverMeets) {
  const auto g = FiniteGraph::build({{"a", "b", "c", "d"}, {{"a", 1, "b", 1}, {"b", 2, "c", 1}, {"c", 2, "d", 1}}});
  const Route r1{g.node("b"), {g.traverse(g.node("b"), 1)}, {}};
  const Route r2{g.node("c"), {g.traverse(g.node("c"), 2)}, {}};
  const auto report = verify_rendezvous(g, r1, r2, kAllStrategies, kSeeds);
  EXPECT_FALSE(report.all_met);
  for (const auto& e : report.entries) EXPECT_FALSE(e.verdict.met);
  EXPECT_EQ(report.entries.size(), 100u);
}

TEST(MeetingGraph, EmptySuiteIsVacuous) {
  const auto g = FiniteGraph::build({{"A", "B"}, {{"A", 1, "B", 1}}});
  const Route r{g.node("A"), {}, {}};
  const auto report = verify_rendezvous(g, r, r, {}, kSeeds);
  EXPECT_TRUE(report.vacuous);
  EXPECT_TRUE(report.all_met);
  EXPECT_TRUE(report.entries.empty());
}

TEST(MeetingGraph, TunnelRoutesAlwaysMeet) {
  const auto g = FiniteGraph::build({{"A", "B"}, {{"A", 1, "B", 1}}});
  const auto [r1, r2] = graph_rv_pair(g, g.node("A"), 1, g.node("B"), 2, {1, kDefaultStepBudget});
  ASSERT_TRUE(tunnel_check(r1, r2));
  const auto report = verify_rendezvous(g, r1, r2, kAllStrategies, kSeeds);
  EXPECT_TRUE(report.all_met);
  for (const auto& e : report.entries) EXPECT_TRUE(e.sound);
}

TEST(MeetingGraph, VerdictsAreSound) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = FiniteGraph::build(random_connected_graph(2 + rng.below(4), 40, trial));
    auto walk = [&](std::size_t len) {
      Route r{NodeHandle{static_cast<std::uint32_t>(rng.below(g.num_nodes()))}, {}, {}};
      for (std::size_t t = 0; t < len; ++t) {
        const auto ports = g.ports(r.end());
        r.steps.push_back(g.traverse(r.end(), ports[rng.below(ports.size())]));
      }
      return r;
    };
    const Route r1 = walk(1 + rng.below(6)), r2 = walk(1 + rng.below(6));
    const std::uint64_t seeds[] = {rng.next()};
    const auto report = verify_rendezvous(g, r1, r2, kAllStrategies, seeds);
    for (const auto& e : report.entries) EXPECT_TRUE(e.sound);
  }
}

TEST(MeetingPlanar, HeadOnMidpoint) {
  const std::vector<QPoint> p1{{0, 0}, {1, 0}}, p2{{1, 0}, {0, 0}};
  const WalkSchedule w{1, {{0, 0}, {1, 1}}};
  const auto v = detect_meeting_planar(p1, p2, w, w);
  ASSERT_TRUE(v.met);
  EXPECT_EQ(v.time, Rational(1, 2));
  EXPECT_EQ(*v.point, (QPoint{Rational(1, 2), 0}));
  EXPECT_EQ(*v.min_distance_sq, 0);
}

TEST(MeetingPlanar, ParallelSegments) {
  const std::vector<QPoint> p1{{0, 0}, {1, 0}}, p2{{0, Rational(1, 4)}, {1, Rational(1, 4)}};
  const WalkSchedule w{1, {{0, 0}, {1, 1}}};
  const auto v = detect_meeting_planar(p1, p2, w, w);
  EXPECT_FALSE(v.met);
  EXPECT_EQ(*v.min_distance_sq, Rational(1, 16));
  EXPECT_EQ(v.horizon, 1);
}

TEST(MeetingPlanar, CrossingPaths) {
  // Diagonals of the unit square crossed at unit speed meet in the centre.
  const std::vector<QPoint> p1{{0, 0}, {1, 1}}, p2{{1, 0}, {0, 1}};
  const WalkSchedule w{1, {{0, 0}, {1, 1}}};
  const auto v = detect_meeting_planar(p1, p2, w, w);
  ASSERT_TRUE(v.met);
  EXPECT_EQ(*v.point, (QPoint{Rational(1, 2), Rational(1, 2)}));
  // Offset in time: closest approach instead.
  const auto late = detect_meeting_planar(p1, p2, w, WalkSchedule{1, {{0, 0}, {Rational(1, 2), 0}, {Rational(3, 2), 1}}});
  EXPECT_FALSE(late.met);
  // Gap (2t - 3/2, 1/2) on [1/2, 1], smallest at t = 3/4.
  EXPECT_EQ(*late.min_distance_sq, Rational(1, 4));
}
