#include "tunnelmeet/rendezvous.hpp"

#include <deque>
#include <functional>

#include "tunnelmeet/error.hpp"

namespace tunnelmeet {

namespace {

struct PortWalk {
  std::vector<EdgeTraversal> steps;
  bool reversal_matches = false;
};

// Lines 7-13: follow s1 while its ports exist, then test s2 = (a_n, ..., a_1).
PortWalk follow_ports(const PortLabeledGraph& g, NodeHandle v, const std::vector<std::uint32_t>& s1,
                      const std::vector<std::uint32_t>& s2) {
  PortWalk out;
  NodeHandle at = v;
  for (const Port p : s1) {
    if (!g.is_port(at, p)) return out;
    out.steps.push_back(g.traverse(at, p));
    at = out.steps.back().to;
  }
  const std::size_t n = s1.size();
  out.reversal_matches = s2.size() == n;
  for (std::size_t t = 0; out.reversal_matches && t < n; ++t) {
    out.reversal_matches = s2[t] == out.steps[n - 1 - t].in_port;
  }
  return out;
}

[[noreturn]] void over_budget(std::uint64_t need, std::uint64_t budget) {
  throw Error(ErrorCode::kStepBudgetExceeded,
              "route would reach " + std::to_string(need) + " steps, budget is " + std::to_string(budget));
}

void append_reversed(std::vector<EdgeTraversal>& out, const EdgeTraversal* first, std::size_t len) {
  for (std::size_t t = len; t > 0; --t) out.push_back(first[t - 1].reversed());
}

}  // namespace

const Quadruple& QuadrupleTable::at(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "phases are numbered from 1");
  while (table_.size() < k) {
    table_.push_back(cursor_.current());
    cursor_.advance();
  }
  return table_[k - 1];
}

RouteBuilder::RouteBuilder(const PortLabeledGraph& g, std::uint64_t step_budget) : g_(g), budget_(step_budget) {}

Route RouteBuilder::route(NodeHandle v, Label l, std::size_t phases) {
  return ensure(v, l, phases).phase_prefix(phases);
}

const Route& RouteBuilder::ensure(NodeHandle v, Label l, std::size_t phases) {
  if (l == 0) throw Error(ErrorCode::kInvalidArgument, "labels are positive");
  auto [it, inserted] = cache_.try_emplace({v.id, l});
  Route& r = it->second;
  if (inserted) {
    g_.is_port(v, 1);  // rejects foreign handles
    r.start = v;
  }
  while (r.phases() < phases) run_phase(r, l, r.phases() + 1);
  return r;
}

void RouteBuilder::run_phase(Route& r, Label l, std::size_t k) {
  const Quadruple& q = table_.at(k);
  const std::size_t hist = r.steps.size();
  r.phase_marks.push_back(hist);
  if (l != q.i && l != q.j) return;

  const bool first = l == q.i;
  const auto walk = follow_ports(g_, r.start, first ? q.s_prime : q.s_dprime, first ? q.s_dprime : q.s_prime);
  const std::size_t m = walk.steps.size();

  const Route* sim = nullptr;
  std::size_t sim_len = 0;
  if (walk.reversal_matches) {
    // The cached route of the simulated agent outlives this call: map nodes
    // are stable and its k - 1 phases are never touched again here.
    try {
      sim = &ensure(walk.steps.back().to, first ? q.j : q.i, k - 1);
    } catch (...) {
      r.phase_marks.pop_back();
      throw;
    }
    sim_len = sim->prefix_length(k - 1);
  }
  const std::uint64_t grown = walk.reversal_matches ? hist + 4 * m + 2 * sim_len : 2 * m;
  if (hist + grown > budget_) {
    r.phase_marks.pop_back();
    over_budget(hist + grown, budget_);
  }

  auto& out = r.steps;
  out.reserve(hist + grown);
  const EdgeTraversal* rs1 = walk.steps.data();
  out.insert(out.end(), walk.steps.begin(), walk.steps.end());  // line 12
  if (walk.reversal_matches) {                                   // line 16
    out.insert(out.end(), sim->steps.begin(), sim->steps.begin() + static_cast<std::ptrdiff_t>(sim_len));
    append_reversed(out, rs1, m);
    append_reversed(out, out.data(), hist);
    out.insert(out.end(), walk.steps.begin(), walk.steps.end());
    append_reversed(out, sim->steps.data(), sim_len);
  }
  append_reversed(out, rs1, m);  // line 17
}

Route graph_rv(const PortLabeledGraph& g, NodeHandle v, Label l, const Limits& limits) {
  RouteBuilder builder(g, limits.step_budget);
  return builder.route(v, l, limits.phase_cap);
}

std::pair<Route, Route> graph_rv_pair(const PortLabeledGraph& g, NodeHandle v1, Label l1, NodeHandle v2,
                                      Label l2, const Limits& limits) {
  if (l1 == l2) throw Error(ErrorCode::kInvalidArgument, "agents must carry different labels");
  RouteBuilder builder(g, limits.step_budget);
  Route r1 = builder.route(v1, l1, limits.phase_cap);
  Route r2 = builder.route(v2, l2, limits.phase_cap);
  return {std::move(r1), std::move(r2)};
}

namespace {

struct LiteralRun {
  const PortLabeledGraph& g;
  std::uint64_t budget;
  QuadrupleTable table;

  void check(std::size_t len) const {
    if (len > budget) over_budget(len, budget);
  }

  std::vector<EdgeTraversal> rec(NodeHandle v, Label l, std::size_t phases) {
    std::vector<EdgeTraversal> r;  // line 1
    for (std::size_t k = 1; k <= phases; ++k) {
      const Quadruple q = table.at(k);  // line 3
      const std::vector<EdgeTraversal> r_hist = r;
      if (l != q.i && l != q.j) continue;
      const bool first = l == q.i;  // lines 5-6
      const Label other = first ? q.j : q.i;
      const auto walk = follow_ports(g, v, first ? q.s_prime : q.s_dprime, first ? q.s_dprime : q.s_prime);
      const auto& r_s1 = walk.steps;
      r.insert(r.end(), r_s1.begin(), r_s1.end());  // line 12
      if (walk.reversal_matches) {
        const NodeHandle w = r_s1.back().to;                        // line 14
        const std::vector<EdgeTraversal> r_sim = rec(w, other, k - 1);  // line 15
        check(r.size() + 2 * r_sim.size() + 3 * r_s1.size() + r_hist.size());
        r.insert(r.end(), r_sim.begin(), r_sim.end());  // line 16
        append_reversed(r, r_s1.data(), r_s1.size());
        append_reversed(r, r_hist.data(), r_hist.size());
        r.insert(r.end(), r_s1.begin(), r_s1.end());
        append_reversed(r, r_sim.data(), r_sim.size());
      }
      append_reversed(r, r_s1.data(), r_s1.size());  // line 17
      check(r.size());
    }
    return r;
  }
};

}  // namespace

Route graph_rv_rec(const PortLabeledGraph& g, NodeHandle v, Label l, std::size_t p, bool mode,
                   const Limits& limits) {
  if (l == 0) throw Error(ErrorCode::kInvalidArgument, "labels are positive");
  g.is_port(v, 1);
  const std::size_t phases = mode ? limits.phase_cap : p;
  LiteralRun run{g, limits.step_budget, {}};
  Route out{v, {}, {}};
  // Phase boundaries are recovered by running one phase further each time;
  // only the final route is returned, the marks come from the same recursion.
  for (std::size_t k = 1; k <= phases; ++k) {
    const auto upto = run.rec(v, l, k - 1);
    out.phase_marks.push_back(upto.size());
  }
  out.steps = run.rec(v, l, phases);
  return out;
}

// ---------------------------------------------------------------------------

bool is_tunnel_at(const Route& r1, const Route& r2, std::size_t n) {
  if (n == 0) return r1.start == r2.start;
  if (n > r1.steps.size() || n > r2.steps.size()) return false;
  for (std::size_t m = 0; m < n; ++m) {
    if (r1.steps[m] != r2.steps[n - 1 - m].reversed()) return false;
  }
  return true;
}

namespace {

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
  return r >= kMod ? r - kMod : r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r >= kMod ? r - kMod : r;
}

std::uint64_t code(const EdgeTraversal& e) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t x : {std::uint64_t{e.from.id}, std::uint64_t{e.out_port}, std::uint64_t{e.to.id},
                          std::uint64_t{e.in_port}}) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return h % kMod;
}

}  // namespace

std::optional<TunnelCertificate> tunnel_check(const Route& r1, const Route& r2) {
  if (r1.start == r2.start) return TunnelCertificate{0, {}};
  // Rolling hashes: forward(n) = sum r1[m] B^m, backward(n) = sum over m of
  // rev(r2[n-1-m]) B^m, which satisfies backward(n) = rev(r2[n-1]) + B backward(n-1).
  constexpr std::uint64_t kBase = 0x1f2e3d4c5b6a798ULL % kMod;
  std::uint64_t forward = 0, backward = 0, power = 1;
  const std::size_t limit = std::min(r1.steps.size(), r2.steps.size());
  for (std::size_t n = 1; n <= limit; ++n) {
    forward = addmod(forward, mulmod(code(r1.steps[n - 1]), power));
    backward = addmod(code(r2.steps[n - 1].reversed()), mulmod(kBase, backward));
    power = mulmod(power, kBase);
    if (forward == backward && r1.steps[n - 1].to == r2.start && r2.steps[n - 1].to == r1.start &&
        is_tunnel_at(r1, r2, n)) {
      return TunnelCertificate{n, {r1.steps.begin(), r1.steps.begin() + static_cast<std::ptrdiff_t>(n)}};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Quadruple path_quadruple(const std::vector<EdgeTraversal>& path, Label i, Label j) {
  Quadruple q{i, j, {}, {}};
  for (const auto& e : path) q.s_prime.push_back(e.out_port);
  for (auto it = path.rbegin(); it != path.rend(); ++it) q.s_dprime.push_back(it->in_port);
  validate(q);
  return q;
}

Quadruple connecting_quadruple(const FiniteGraph& g, NodeHandle v, NodeHandle w, Label i, Label j) {
  if (v == w) throw Error(ErrorCode::kInvalidArgument, "starts coincide");
  std::vector<std::size_t> dist(g.num_nodes(), SIZE_MAX);
  dist[w.id] = 0;
  std::deque<NodeHandle> queue{w};
  while (!queue.empty()) {
    const NodeHandle x = queue.front();
    queue.pop_front();
    for (Port p : g.ports(x)) {
      const NodeHandle y = g.traverse(x, p).to;
      if (dist[y.id] == SIZE_MAX) {
        dist[y.id] = dist[x.id] + 1;
        queue.push_back(y);
      }
    }
  }
  if (dist[v.id] == SIZE_MAX) throw Error(ErrorCode::kNoPath, "no path between the starts");

  std::optional<Quadruple> best;
  Natural best_index;
  std::vector<EdgeTraversal> path;
  std::function<void(NodeHandle)> descend = [&](NodeHandle x) {
    if (x == w) {
      Quadruple q = path_quadruple(path, i, j);
      Natural index = phi_index(q);
      if (!best || index < best_index) {
        best = std::move(q);
        best_index = std::move(index);
      }
      return;
    }
    for (Port p : g.ports(x)) {
      const auto e = g.traverse(x, p);
      if (dist[e.to.id] + 1 != dist[x.id]) continue;
      path.push_back(e);
      descend(e.to);
      path.pop_back();
    }
  };
  descend(v);
  return *best;
}

}  // namespace tunnelmeet
