#include "tunnelmeet/schedule.hpp"

#include <algorithm>
#include <deque>

#include "tunnelmeet/error.hpp"
#include "tunnelmeet/random.hpp"

namespace tunnelmeet {

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kUnitSpeed: return "unit_speed";
    case StrategyKind::kAlternating: return "alternating";
    case StrategyKind::kRandomSpeeds: return "random_speeds";
    case StrategyKind::kJitter: return "jitter";
    case StrategyKind::kFrozenPrefix: return "frozen_prefix";
  }
  return "";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
  for (auto kind : kAllStrategies) {
    if (strategy_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::pair<AgentStrategy, AgentStrategy> strategy_pair(StrategyKind kind, std::uint64_t seed) {
  AgentStrategy a{kind, seed, Role::kFirst, 0}, b{kind, seed, Role::kSecond, 0};
  switch (kind) {
    case StrategyKind::kUnitSpeed:
    case StrategyKind::kAlternating:
      break;
    case StrategyKind::kRandomSpeeds:
    case StrategyKind::kJitter:
      a.seed = mix_seed(seed, 1);
      b.seed = mix_seed(seed, 2);
      break;
    case StrategyKind::kFrozenPrefix: {
      SplitMix64 rng(mix_seed(seed, 3));
      const bool second = rng.below(2) == 1;
      const Rational freeze(static_cast<long>(1 + rng.below(64)), 4);
      (second ? b : a).freeze = freeze;
      break;
    }
  }
  return {a, b};
}

namespace {

Rational dyadic(SplitMix64& rng, std::uint64_t lo, std::uint64_t hi, long den) {
  return Rational(static_cast<long>(lo + rng.below(hi - lo + 1)), den);
}

class GeneratedStream final : public ScheduleStream {
 public:
  GeneratedStream(AgentStrategy strategy, SegmentLengths lengths, std::size_t segments)
      : s_(std::move(strategy)), lengths_(std::move(lengths)), segments_(segments) {}

  std::optional<Piece> next() override {
    while (pending_.empty() && m_ < segments_) fill(m_++);
    if (pending_.empty()) return std::nullopt;
    Piece p = std::move(pending_.front());
    pending_.pop_front();
    return p;
  }

 private:
  void push(std::size_t m, const Rational& duration, const Rational& target) {
    Piece p{now_, now_ + duration, m, lambda_, target};
    now_ = p.t1;
    lambda_ = target;
    pending_.push_back(std::move(p));
  }

  Rational slot(std::uint64_t k) const {
    SplitMix64 rng(mix_seed(s_.seed, k));
    return dyadic(rng, 1, 4, 2);
  }

  void fill(std::size_t m) {
    lambda_ = 0;
    const Rational len = lengths_(m);
    switch (s_.kind) {
      case StrategyKind::kFrozenPrefix:
        if (m == 0 && s_.freeze > 0) push(m, s_.freeze, 0);
        push(m, len, 1);
        break;
      case StrategyKind::kUnitSpeed:
        push(m, len, 1);
        break;
      case StrategyKind::kAlternating: {
        const std::uint64_t move = 2 * m + (s_.role == Role::kFirst ? 0 : 1);
        if (move > 0) push(m, slot(move - 1), 0);
        push(m, slot(move), 1);
        break;
      }
      case StrategyKind::kRandomSpeeds: {
        SplitMix64 rng(mix_seed(s_.seed, m));
        push(m, len * dyadic(rng, 1, 16, 8), 1);
        break;
      }
      case StrategyKind::kJitter: {
        SplitMix64 rng(mix_seed(s_.seed, m));
        const Rational x1 = dyadic(rng, 1, 7, 8);
        const Rational x2 = x1 * dyadic(rng, 0, 3, 4);
        push(m, len * x1 * dyadic(rng, 1, 8, 4), x1);
        push(m, len * (x1 - x2) * dyadic(rng, 1, 8, 4), x2);
        push(m, len * (1 - x2) * dyadic(rng, 1, 8, 4), 1);
        break;
      }
    }
  }

  AgentStrategy s_;
  SegmentLengths lengths_;
  std::size_t segments_;
  std::size_t m_ = 0;
  Rational now_ = 0;
  Rational lambda_ = 0;
  std::deque<Piece> pending_;
};

class ReplayStream final : public ScheduleStream {
 public:
  explicit ReplayStream(const WalkSchedule& w) : w_(w) {}

  std::optional<Piece> next() override {
    if (k_ + 1 >= w_.breakpoints.size()) return std::nullopt;
    const auto& a = w_.breakpoints[k_];
    const auto& b = w_.breakpoints[k_ + 1];
    ++k_;
    const Rational base(static_cast<long>(m_));
    Piece p{a.time, b.time, m_, a.position - base, b.position - base};
    if (b.position == base + 1) ++m_;
    return p;
  }

 private:
  const WalkSchedule& w_;
  std::size_t k_ = 0;
  std::size_t m_ = 0;
};

[[noreturn]] void mismatch(std::size_t k, const std::string& why) {
  throw Error(ErrorCode::kScheduleMismatch, "breakpoint " + std::to_string(k) + ": " + why);
}

}  // namespace

std::unique_ptr<ScheduleStream> make_stream(const AgentStrategy& strategy, SegmentLengths lengths,
                                            std::size_t segments) {
  return std::make_unique<GeneratedStream>(strategy, std::move(lengths), segments);
}

WalkSchedule make_schedule(const AgentStrategy& strategy, const SegmentLengths& lengths, std::size_t segments) {
  WalkSchedule w{segments, {{0, 0}}};
  auto stream = make_stream(strategy, lengths, segments);
  while (auto p = stream->next()) {
    w.breakpoints.push_back({p->t1, Rational(static_cast<long>(p->segment)) + p->l1});
  }
  return w;
}

std::unique_ptr<ScheduleStream> stream_of(const WalkSchedule& w) { return std::make_unique<ReplayStream>(w); }

void validate_schedule(const WalkSchedule& w) {
  if (w.breakpoints.empty()) mismatch(0, "schedule is empty");
  if (w.breakpoints[0] != Breakpoint{0, 0}) mismatch(0, "walk must start at time 0 at the route start");
  std::size_t m = 0;
  for (std::size_t k = 1; k < w.breakpoints.size(); ++k) {
    const auto& [t, s] = w.breakpoints[k];
    if (m == w.segments) mismatch(k, "walk continues after the last segment");
    if (t <= w.breakpoints[k - 1].time) mismatch(k, "times must increase strictly");
    const Rational base(static_cast<long>(m));
    if (s < base || s > base + 1) mismatch(k, "leaves segment " + std::to_string(m + 1) + " before completing it");
    if (s == base + 1) ++m;
  }
  if (m != w.segments) mismatch(w.breakpoints.size(), "route not completed");
}

std::vector<Rational> segment_completion(const WalkSchedule& w) {
  std::vector<Rational> out;
  for (const auto& [t, s] : w.breakpoints) {
    if (s == Rational(static_cast<long>(out.size() + 1))) out.push_back(t);
  }
  return out;
}

Rational position_at(const WalkSchedule& w, const Rational& t) {
  const auto& bp = w.breakpoints;
  if (t <= bp.front().time) return bp.front().position;
  if (t >= bp.back().time) return bp.back().position;
  auto it = std::upper_bound(bp.begin(), bp.end(), t, [](const Rational& x, const Breakpoint& b) { return x < b.time; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  return a.position + (b.position - a.position) * (t - a.time) / (b.time - a.time);
}

}  // namespace tunnelmeet
