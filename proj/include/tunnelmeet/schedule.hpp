#pragma once

// Adversarial walks. A walk over a route of N segments is a continuous,
// piecewise-linear map from time to position s in [0, N], measured in
// segment units: s = m + lambda puts the agent at fraction lambda of segment
// m (0-based). While the agent is on segment m, s stays inside [m, m + 1];
// reaching m + 1 completes the segment.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tunnelmeet/rational.hpp"

namespace tunnelmeet {

enum class StrategyKind { kUnitSpeed, kAlternating, kRandomSpeeds, kJitter, kFrozenPrefix };

inline constexpr StrategyKind kAllStrategies[] = {StrategyKind::kUnitSpeed, StrategyKind::kAlternating,
                                                  StrategyKind::kRandomSpeeds, StrategyKind::kJitter,
                                                  StrategyKind::kFrozenPrefix};

std::string_view strategy_name(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(std::string_view name);

enum class Role { kFirst, kSecond };

/// One agent's walk generator.
///   unit_speed: each segment takes time equal to its length.
///   alternating: time is cut into slots shared by both agents (the slot
///     lengths depend only on the seed); the first agent covers segment m in
///     slot 2m and the second in slot 2m + 1, waiting otherwise.
///   random_speeds: every segment crossed at its own seeded speed.
///   jitter: every segment crossed forward, partly back, then forward again.
///   frozen_prefix: waits `freeze`, then unit speed.
struct AgentStrategy {
  StrategyKind kind = StrategyKind::kUnitSpeed;
  std::uint64_t seed = 0;
  Role role = Role::kFirst;
  Rational freeze = 0;
};

/// The two agents' generators for one (strategy, seed) cell of a suite.
/// For frozen_prefix the seed picks which agent is frozen and for how long.
std::pair<AgentStrategy, AgentStrategy> strategy_pair(StrategyKind kind, std::uint64_t seed);

/// Length of segment m; unit_speed spends that much time on it.
using SegmentLengths = std::function<Rational(std::size_t)>;

/// Linear motion inside one segment: lambda runs from l0 to l1 over [t0, t1].
struct Piece {
  Rational t0, t1;
  std::size_t segment = 0;
  Rational l0, l1;

  /// lambda at time t, t inside [t0, t1].
  Rational at(const Rational& t) const { return l0 + (l1 - l0) * (t - t0) / (t1 - t0); }
};

/// Pieces in time order, contiguous in time and position.
class ScheduleStream {
 public:
  virtual ~ScheduleStream() = default;
  virtual std::optional<Piece> next() = 0;
};

std::unique_ptr<ScheduleStream> make_stream(const AgentStrategy& strategy, SegmentLengths lengths,
                                            std::size_t segments);

struct Breakpoint {
  Rational time;
  Rational position;

  bool operator==(const Breakpoint&) const = default;
};

struct WalkSchedule {
  std::size_t segments = 0;
  std::vector<Breakpoint> breakpoints;

  const Rational& end_time() const { return breakpoints.back().time; }
  bool operator==(const WalkSchedule&) const = default;
};

WalkSchedule make_schedule(const AgentStrategy& strategy, const SegmentLengths& lengths, std::size_t segments);

std::unique_ptr<ScheduleStream> stream_of(const WalkSchedule& w);

/// Throws Error(kScheduleMismatch) unless w starts at (0, 0), has strictly
/// increasing times, keeps every segment's window inside that segment and
/// ends exactly when segment N is completed.
void validate_schedule(const WalkSchedule& w);

/// Time at which each segment is completed.
std::vector<Rational> segment_completion(const WalkSchedule& w);

/// Position s at time t (clamped to the end of the walk).
Rational position_at(const WalkSchedule& w, const Rational& t);

}  // namespace tunnelmeet
