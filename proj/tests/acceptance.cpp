// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance <source dir> <cli binary> [--only N]...
//
// Exit status is 0 only when every selected criterion passes.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "tunnelmeet/enumeration.hpp"
#include "tunnelmeet/error.hpp"
#include "tunnelmeet/geometry.hpp"
#include "tunnelmeet/io.hpp"
#include "tunnelmeet/meeting.hpp"
#include "tunnelmeet/random.hpp"
#include "tunnelmeet/rendezvous.hpp"

using namespace tunnelmeet;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kEnumerationSeconds = 5.0;
constexpr double kInstanceSeconds = 60.0;
constexpr double kScenarioSeconds = 120.0;
constexpr std::uint64_t kCorpusBudget = 10'000'000;
constexpr std::size_t kPrefixPhases = 10;
constexpr std::size_t kSamplerInstances = 200;
constexpr std::uint64_t kSamplerCells = std::uint64_t{1} << 16;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double x, int digits = 2) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << x;
  return s.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::uint64_t> seeds20() {
  std::vector<std::uint64_t> s(20);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

// ---------------------------------------------------------------------------
// 1. Enumeration round trips.

Outcome enumeration_round_trips() {
  const auto t0 = Clock::now();
  std::size_t bad = 0;
  for (std::uint64_t n = 0; n < 10'000; ++n) {
    const Natural code(n);
    const auto [a, b] = pair_decode(code);
    bad += pair_encode(a, b) != code;
    const auto terms = seq_decode(code);
    bad += seq_encode(terms) != code;
    if (n >= 1) bad += phi_index(phi(code)) != code;
    if (n >= 1) bad += rational_pair_index(rational_pair(n)) != n;
  }
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Natural a(rng.below(std::uint64_t{1} << 40)), b(rng.below(std::uint64_t{1} << 40));
    bad += pair_decode(pair_encode(a, b)) != std::make_pair(a, b);

    std::vector<Natural> terms(1 + rng.below(6));
    for (auto& t : terms) t = Natural(1 + rng.below(1000));
    bad += seq_decode(seq_encode(terms)) != terms;

    Quadruple q;
    q.i = 1 + rng.below(5);
    q.j = q.i + 1 + rng.below(4);
    const std::size_t len = 1 + rng.below(4);
    for (std::size_t k = 0; k < len; ++k) {
      q.s_prime.push_back(static_cast<std::uint32_t>(1 + rng.below(6)));
      q.s_dprime.push_back(static_cast<std::uint32_t>(1 + rng.below(6)));
    }
    bad += phi(phi_index(q)) != q;

    auto rat = [&rng] {
      const long num = static_cast<long>(rng.below(200)) - 100;
      return Rational(num, static_cast<long>(1 + rng.below(100)));
    };
    const RationalPair z{rat(), rat()};
    bad += rational_pair(rational_pair_index(z)) != z;
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < kEnumerationSeconds,
          "Cantor, sequence, quadruple and rational-pair codecs; " + std::to_string(bad) + " mismatches; " +
              fixed(secs) + " s (limit " + fixed(kEnumerationSeconds, 0) + " s)"};
}

// ---------------------------------------------------------------------------
// 2-5. The graph corpus.

std::vector<std::pair<std::string, GraphSpec>> corpus_graphs() {
  std::vector<std::pair<std::string, GraphSpec>> gs{
      {"K2", {{"a", "b"}, {{"a", 1, "b", 1}}}},
      {"P3", {{"a", "b", "c"}, {{"a", 1, "b", 1}, {"b", 2, "c", 1}}}},
      {"C4", {{"a", "b", "c", "d"}, {{"a", 1, "b", 2}, {"b", 1, "c", 2}, {"c", 1, "d", 2}, {"d", 1, "a", 2}}}},
      {"S4", {{"h", "x", "y", "z"}, {{"h", 1, "x", 1}, {"h", 2, "y", 1}, {"h", 3, "z", 1}}}}};
  for (std::uint64_t s = 0; s < 10; ++s) gs.emplace_back("R" + std::to_string(s), random_connected_graph(5, 30, s));
  return gs;
}

struct CorpusTally {
  std::size_t instances = 0;
  std::size_t certified = 0;
  std::size_t over_budget = 0;
  std::size_t no_certificate = 0;
  std::size_t too_slow = 0;
  double slowest = 0;
  std::string first_failure;
  // Adversary suite on certified pairs.
  std::size_t suites = 0;
  std::size_t suite_failures = 0;
  std::size_t unsound = 0;
  // Phase closure on every constructed route.
  std::size_t routes_checked = 0;
  std::size_t closure_violations = 0;
};

const CorpusTally& corpus() {
  static const CorpusTally tally = [] {
    CorpusTally t;
    const auto seeds = seeds20();
    for (const auto& [name, spec] : corpus_graphs()) {
      const auto g = FiniteGraph::build(spec);
      for (const auto v : g.nodes()) {
        for (const auto w : g.nodes()) {
          if (v == w) continue;
          for (Label i = 1; i <= 3; ++i) {
            for (Label j = i + 1; j <= 3; ++j) {
              ++t.instances;
              const auto t0 = Clock::now();
              const std::string id = name + " " + g.node_name(v) + "->" + g.node_name(w) + " labels " +
                                     std::to_string(i) + "," + std::to_string(j);
              const Quadruple q = connecting_quadruple(g, v, w, i, j);
              const auto k = phi_index(q).convert_to<std::uint64_t>();
              try {
                const auto [r1, r2] = graph_rv_pair(g, v, i, w, j, {k, kCorpusBudget});
                const auto cert = tunnel_check(r1, r2);
                const double secs = seconds_since(t0);
                t.slowest = std::max(t.slowest, secs);
                if (secs >= kInstanceSeconds) ++t.too_slow;
                if (!cert) {
                  ++t.no_certificate;
                  if (t.first_failure.empty()) t.first_failure = id + ": no tunnel";
                  continue;
                }
                if (secs < kInstanceSeconds) ++t.certified;
                for (const Route* r : {&r1, &r2}) {
                  ++t.routes_checked;
                  t.closure_violations += phase_closure_violations(*r).size();
                }
                const auto report = verify_rendezvous(g, r1, r2, kAllStrategies, seeds);
                ++t.suites;
                for (const auto& e : report.entries) {
                  t.suite_failures += !e.success;
                  t.unsound += !e.sound;
                }
              } catch (const Error& e) {
                if (e.code() != ErrorCode::kStepBudgetExceeded) throw;
                ++t.over_budget;
                t.slowest = std::max(t.slowest, seconds_since(t0));
                if (t.first_failure.empty()) t.first_failure = id + " (phase " + std::to_string(k) + "): " + e.what();
              }
            }
          }
        }
      }
    }
    return t;
  }();
  return tally;
}

Outcome tunnel_certificates() {
  const auto& t = corpus();
  std::string detail = std::to_string(t.certified) + "/" + std::to_string(t.instances) + " certified; " +
                       std::to_string(t.over_budget) + " exceed the 10^7 step budget, " +
                       std::to_string(t.no_certificate) + " without tunnel, " + std::to_string(t.too_slow) +
                       " over " + fixed(kInstanceSeconds, 0) + " s; slowest " + fixed(t.slowest) + " s";
  if (!t.first_failure.empty()) detail += "; first failure: " + t.first_failure;
  return {t.certified == t.instances, detail};
}

Outcome tunnel_implies_meeting() {
  const auto& t = corpus();
  return {t.suites > 0 && t.suite_failures == 0 && t.unsound == 0,
          std::to_string(t.suites) + " certified pairs x 5 strategies x 20 seeds; " +
              std::to_string(t.suite_failures) + " misses, " + std::to_string(t.unsound) + " unsound; " +
              std::to_string(t.instances - t.suites) + " corpus instances have no constructible pair"};
}

Outcome phase_closure() {
  const auto& t = corpus();
  return {t.routes_checked > 0 && t.closure_violations == 0,
          std::to_string(t.routes_checked) + " routes, " + std::to_string(t.closure_violations) + " violations"};
}

Outcome simulation_prefix() {
  std::size_t compared = 0, mismatches = 0;
  const auto t0 = Clock::now();
  for (const auto& [name, spec] : corpus_graphs()) {
    const auto g = FiniteGraph::build(spec);
    for (const auto v : g.nodes()) {
      for (Label l = 1; l <= 3; ++l) {
        const Limits limits{kPrefixPhases, kCorpusBudget};
        const Route main = graph_rv_rec(g, v, l, 0, true, limits);
        for (std::size_t p = 0; p <= kPrefixPhases; ++p) {
          ++compared;
          mismatches += graph_rv_rec(g, v, l, p, false, limits).steps != main.phase_prefix(p).steps;
        }
      }
    }
  }
  return {compared > 0 && mismatches == 0, std::to_string(compared) + " (graph, start, label, p <= 10) cases, " +
                                               std::to_string(mismatches) + " mismatches; " +
                                               fixed(seconds_since(t0)) + " s"};
}

// ---------------------------------------------------------------------------
// 6. Exact cell solver against a fine-grid sampler.
//
// Instances live on weighted paths, so a graph point is one coordinate and
// meetings are zeros of x1(t) - x2(t). Only strategies that never stop an
// agent are drawn: a waiting agent met by one that turns back is a zero
// without a sign change, which no sign-change sampler can see.

constexpr StrategyKind kMovingStrategies[] = {StrategyKind::kUnitSpeed, StrategyKind::kRandomSpeeds,
                                              StrategyKind::kJitter};

struct LineWalk {
  std::vector<double> times, positions;  // breakpoints
  std::vector<double> coords;            // route vertices
  std::size_t segments = 0;

  double at(double t) const {
    std::size_t k = std::upper_bound(times.begin(), times.end(), t) - times.begin();
    k = std::clamp<std::size_t>(k, 1, times.size() - 1);
    const double t0 = times[k - 1], t1 = times[k];
    const double s = t1 > t0 ? positions[k - 1] + (positions[k] - positions[k - 1]) * std::clamp((t - t0) / (t1 - t0), 0.0, 1.0)
                             : positions[k];
    std::size_t m = static_cast<std::size_t>(std::floor(s));
    if (m >= segments) m = segments - 1;
    return coords[m] + (s - static_cast<double>(m)) * (coords[m + 1] - coords[m]);
  }
};

Outcome sampler_oracle() {
  SplitMix64 rng(606);
  std::size_t met_exact = 0, met_agree = 0, disagree = 0, time_off = 0;
  std::string first;
  for (std::size_t inst = 0; inst < kSamplerInstances; ++inst) {
    const std::size_t n = 4 + rng.below(4);
    GraphSpec spec;
    std::vector<Rational> coord{0};
    static const long dens[] = {7, 11, 13, 17};
    for (std::size_t k = 0; k < n; ++k) spec.nodes.push_back("p" + std::to_string(k));
    // Inner nodes take ports 1 and 2 in random order; the ends have port 1.
    std::vector<Port> right(n, 1);
    for (std::size_t k = 1; k + 1 < n; ++k) right[k] = static_cast<Port>(1 + rng.below(2));
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const Port left = k + 1 == n - 1 ? 1 : static_cast<Port>(3 - right[k + 1]);
      const Rational len(static_cast<long>(5 + rng.below(25)), dens[rng.below(4)]);
      spec.edges.push_back({spec.nodes[k], right[k], spec.nodes[k + 1], left, len});
      coord.push_back(coord.back() + len);
    }
    const auto g = FiniteGraph::build(spec);
    auto index_of = [&](NodeHandle h) { return static_cast<std::size_t>(std::stoul(g.node_name(h).substr(1))); };

    auto walk = [&](std::size_t from) {
      Route r{g.node(spec.nodes[from]), {}, {}};
      NodeHandle at = r.start;
      const std::size_t steps = 3 + rng.below(10);
      for (std::size_t s = 0; s < steps; ++s) {
        const auto ports = g.ports(at);
        const auto e = g.traverse(at, ports[rng.below(ports.size())]);
        r.steps.push_back(e);
        at = e.to;
      }
      return r;
    };
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    const Route r1 = walk(a), r2 = walk(b);
    const StrategyKind kind = kMovingStrategies[rng.below(3)];
    const auto [s1, s2] = strategy_pair(kind, rng.next());
    const WalkSchedule w1 = make_schedule(s1, route_lengths(g, r1), r1.steps.size());
    const WalkSchedule w2 = make_schedule(s2, route_lengths(g, r2), r2.steps.size());
    const MeetingVerdict exact = detect_meeting_graph(g, r1, r2, w1, w2);

    auto line_walk = [&](const Route& r, const WalkSchedule& w) {
      LineWalk lw;
      lw.segments = r.steps.size();
      for (const auto& bp : w.breakpoints) {
        lw.times.push_back(to_double(bp.time));
        lw.positions.push_back(to_double(bp.position));
      }
      lw.coords.push_back(to_double(coord[index_of(r.start)]));
      for (const auto& e : r.steps) lw.coords.push_back(to_double(coord[index_of(e.to)]));
      return lw;
    };
    const LineWalk l1 = line_walk(r1, w1), l2 = line_walk(r2, w2);
    const double horizon = std::min(to_double(w1.end_time()), to_double(w2.end_time()));
    const double h = horizon / static_cast<double>(kSamplerCells);
    std::optional<std::pair<double, double>> event;
    double prev = l1.at(0) - l2.at(0);
    if (prev == 0) event = std::make_pair(0.0, 0.0);
    for (std::uint64_t k = 1; k <= kSamplerCells && !event; ++k) {
      const double t = horizon * static_cast<double>(k) / static_cast<double>(kSamplerCells);
      const double d = l1.at(t) - l2.at(t);
      if (d == 0) {
        event = std::make_pair(t, t);
      } else if ((d < 0) != (prev < 0)) {
        event = std::make_pair(t - h, t);
      }
      prev = d;
    }

    met_exact += exact.met;
    if (exact.met != event.has_value()) {
      ++disagree;
      if (first.empty()) {
        first = "instance " + std::to_string(inst) + " (" + std::string(strategy_name(kind)) + "): exact " +
                (exact.met ? "met at " + fixed(to_double(exact.time), 6) : std::string("not met")) + ", sampler " +
                (event ? "met" : "not met");
      }
      continue;
    }
    if (exact.met) {
      ++met_agree;
      const double t = to_double(exact.time);
      if (t < event->first - h || t > event->second + h) {
        ++time_off;
        if (first.empty()) {
          first = "instance " + std::to_string(inst) + ": exact time " + fixed(t, 6) + " vs sampled cell [" +
                  fixed(event->first, 6) + ", " + fixed(event->second, 6) + "]";
        }
      }
    }
  }
  std::string detail = std::to_string(kSamplerInstances) + " instances, " + std::to_string(met_exact) +
                       " met exactly; " + std::to_string(disagree) + " met/not-met disagreements, " +
                       std::to_string(time_off) + " times outside one cell (grid 2^-16 of the horizon)";
  if (!first.empty()) detail += "; first: " + first;
  return {disagree == 0 && time_off == 0, detail};
}

// ---------------------------------------------------------------------------
// Scenario runs, shared by 7-10.

fs::path g_source;

struct ScenarioRun {
  Scenario scenario;
  RunResult result;
  double seconds = 0;
};

const ScenarioRun& scenario_run(const std::string& name) {
  static std::map<std::string, ScenarioRun> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  ScenarioRun run;
  run.scenario = parse_scenario(read_file(g_source / "scenarios" / (name + ".json")));
  const auto t0 = Clock::now();
  run.result = run_scenario(run.scenario);
  run.seconds = seconds_since(t0);
  return cache.emplace(name, std::move(run)).first->second;
}

bool on_segment(const QPoint& p, const QPoint& a, const QPoint& b) {
  if (cross(b - a, p - a) != 0) return false;
  const Rational d = dot(p - a, b - a);
  return d >= 0 && d <= norm_sq(b - a);
}

std::size_t vertices_on(const std::vector<QPoint>& vs, const std::vector<QPoint>& poly) {
  std::size_t n = 0;
  for (const auto& p : vs) {
    for (std::size_t m = 0; m + 1 < poly.size(); ++m) n += on_segment(p, poly[m], poly[m + 1]);
  }
  return n;
}

std::size_t g_parallel_containment = 0;

Outcome negative_regression() {
  const auto& run = scenario_run("parallel_shift");
  const Scenario& s = run.scenario;
  const Terrain& t = *s.terrain;
  const QPoint v = s.agents[0].point, w = s.agents[1].point;
  const auto [r1, r2] = geometric_rv_pair(t, v, s.agents[0].label, w, s.agents[1].label, s.limits);
  const auto base = geometric_rv(t, v, s.agents[1].label, s.limits);
  g_parallel_containment = containment_violations(t, r1) + containment_violations(t, r2);

  std::size_t touching = 0;
  for (const auto* r : {&r1, &r2}) {
    for (const auto& seg : r->segments) touching += seg.kind != SegmentKind::kFree;
  }
  const auto p1 = r1.vertices(), p2 = r2.vertices(), pb = base.vertices();
  bool shifted = p2.size() == pb.size();
  for (std::size_t m = 0; shifted && m < p2.size(); ++m) shifted = p2[m] == pb[m] + (w - v);
  const std::size_t contacts = vertices_on(p1, p2) + vertices_on(p2, p1);

  std::size_t met = 0, alternating = 0;
  Rational shortest_horizon = -1;
  for (const auto& e : run.result.report.entries) {
    met += e.verdict.met;
    alternating += e.strategy == StrategyKind::kAlternating;
    if (shortest_horizon < 0 || e.verdict.horizon < shortest_horizon) shortest_horizon = e.verdict.horizon;
  }
  const auto n = run.result.report.entries.size();
  const bool pass = touching == 0 && shifted && contacts == 0 && n > 0 && alternating == n && met == 0;
  return {pass, std::to_string(p1.size() - 1) + "/" + std::to_string(p2.size() - 1) + " segments, " +
                    (shifted ? "parallel shift" : "NOT a parallel shift") + ", " + std::to_string(touching) +
                    " boundary contacts, " + std::to_string(contacts) + " vertex-on-route contacts; " +
                    std::to_string(met) + "/" + std::to_string(n) + " alternating runs met; shortest horizon " +
                    fixed(to_double(shortest_horizon))};
}

Outcome geometric_rendezvous() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"square", "l_shape", "square_hole"}) {
    const auto& run = scenario_run(name);
    std::size_t ok = 0;
    for (const auto& e : run.result.report.entries) ok += e.success && e.sound && e.verdict.met;
    const auto n = run.result.report.entries.size();
    const bool full_suite = n == 100;
    pass = pass && full_suite && ok == n && run.seconds < kScenarioSeconds;
    if (!detail.empty()) detail += "; ";
    detail += std::string(name) + " " + std::to_string(ok) + "/" + std::to_string(n) + " met, " +
              fixed(run.seconds) + " s";
  }
  return {pass, detail + " (limit " + fixed(kScenarioSeconds, 0) + " s each)"};
}

Outcome approximate_rendezvous() {
  const auto& run = scenario_run("approx_sqrt2");
  const Scenario& s = run.scenario;
  const Natural scale = Natural(1) << 32;
  const Natural half = scale * scale / 2;
  const Rational approx_x(Natural(sqrt(half)), scale);
  const Rational eps(1, 1024);
  const bool start_ok = s.agents[1].point == QPoint{approx_x, Rational(1, 2)} && s.epsilon && *s.epsilon == eps;
  // The 2^-32 approximation really is within 2^-32 of sqrt(2)/2.
  const bool bracket = approx_x * approx_x <= Rational(1, 2) &&
                       (approx_x + Rational(Natural(1), scale)) * (approx_x + Rational(Natural(1), scale)) > Rational(1, 2);
  std::size_t ok = 0;
  Rational worst = 0;
  for (const auto& e : run.result.report.entries) {
    const Rational d2 = e.verdict.met ? Rational(0) : e.verdict.min_distance_sq.value_or(Rational(1));
    worst = std::max(worst, d2);
    ok += e.success && d2 <= eps * eps;
  }
  const auto n = run.result.report.entries.size();
  return {start_ok && bracket && n == 100 && ok == n,
          std::to_string(ok) + "/" + std::to_string(n) + " runs within 2^-10; largest min_distance^2 " +
              to_string(worst) + "; " + fixed(run.seconds) + " s"};
}

Outcome containment_audit() {
  if (scenario_run("parallel_shift").result.report.entries.empty()) return {false, "no parallel-shift run"};
  negative_regression();
  std::size_t total = g_parallel_containment;
  std::size_t segments = 0;
  for (const char* name : {"square", "l_shape", "square_hole", "approx_sqrt2", "square_hole_approx", "parallel_shift"}) {
    const auto& r = scenario_run(name).result;
    total += r.containment_violations;
    segments += r.route_segments[0] + r.route_segments[1];
  }
  return {total == 0, std::to_string(segments) + " planar segments over 6 scenarios, " + std::to_string(total) +
                          " violations"};
}

// ---------------------------------------------------------------------------
// 11. Golden determinism through the command-line tool.

fs::path g_cli;

int run_cli(const fs::path& scenario, const fs::path& out) {
  const std::string cmd = "\"" + g_cli.string() + "\" run \"" + scenario.string() + "\" --out \"" + out.string() +
                          "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome golden_determinism() {
  const fs::path golden = g_source / "tests" / "golden";
  std::map<std::string, int> expected_exit;
  {
    std::ifstream in(golden / "exit_codes.txt");
    std::string name;
    int code = 0;
    while (in >> name >> code) expected_exit[name] = code;
  }
  std::set<fs::path> scenarios;
  for (const auto& e : fs::directory_iterator(g_source / "scenarios")) {
    if (e.path().extension() == ".json") scenarios.insert(e.path());
  }
  const fs::path tmp = fs::temp_directory_path() / ("tunnelmeet-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  std::size_t identical = 0, golden_match = 0, checked = 0;
  std::string first;
  for (const auto& path : scenarios) {
    const std::string stem = path.stem().string();
    ++checked;
    const fs::path a = tmp / (stem + ".1.json"), b = tmp / (stem + ".2.json");
    const int ca = run_cli(path, a), cb = run_cli(path, b);
    const auto want = expected_exit.find(stem);
    const bool exit_ok = want != expected_exit.end() && ca == want->second && cb == want->second;
    const fs::path gold = golden / (stem + ".verdict.json");
    bool same = false, matches = false;
    if (fs::exists(gold)) {
      same = fs::exists(a) && fs::exists(b) && read_file(a) == read_file(b);
      matches = same && read_file(a) == read_file(gold);
    } else {
      // Input errors write nothing.
      same = matches = !fs::exists(a) && !fs::exists(b);
    }
    identical += same && exit_ok;
    golden_match += matches && exit_ok;
    if (first.empty() && !(same && matches && exit_ok)) {
      first = stem + ": exit " + std::to_string(ca) + "/" + std::to_string(cb) + (same ? "" : ", runs differ") +
              (matches ? "" : ", golden differs");
    }
  }
  fs::remove_all(tmp);
  std::string detail = std::to_string(checked) + " scenarios; " + std::to_string(identical) +
                       " byte-identical across two runs, " + std::to_string(golden_match) +
                       " equal to the committed goldens (second platform not available here)";
  if (!first.empty()) detail += "; first: " + first;
  return {checked > 0 && identical == checked && golden_match == checked, detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <source dir> <cli binary> [--only N]...\n";
    return 2;
  }
  g_source = argv[1];
  g_cli = argv[2];
  std::set<int> only;
  for (int k = 3; k + 1 < argc; k += 2) {
    if (std::string_view(argv[k]) == "--only") only.insert(std::atoi(argv[k + 1]));
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"enumeration round trips", enumeration_round_trips},
      {"tunnel certificates on the graph corpus", tunnel_certificates},
      {"tunnel-certified pairs meet under the adversary suite", tunnel_implies_meeting},
      {"phase closure", phase_closure},
      {"simulation-mode prefix property", simulation_prefix},
      {"exact meeting solver vs fine-grid sampler (moving strategies)", sampler_oracle},
      {"alternating walks avoid parallel-shifted routes", negative_regression},
      {"geometric rendezvous in square, L-shape and square with hole", geometric_rendezvous},
      {"epsilon-approximate rendezvous from an approximated irrational start", approximate_rendezvous},
      {"containment audit", containment_audit},
      {"golden determinism of verdict-v1 output", golden_determinism},
  };

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int number = static_cast<int>(k + 1);
    if (!only.empty() && !only.count(number)) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << number << ". " << criteria[k].first << ": " << o.detail
              << " [" << fixed(seconds_since(t0)) << " s]" << std::endl;
  }
  return all ? 0 : 1;
}
