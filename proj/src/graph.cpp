#include "tunnelmeet/graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <numeric>
#include <set>

#include "tunnelmeet/error.hpp"
#include "tunnelmeet/random.hpp"

namespace tunnelmeet {

FiniteGraph FiniteGraph::build(const GraphSpec& spec) {
  FiniteGraph g;
  for (const auto& name : spec.nodes) {
    const NodeHandle h{static_cast<std::uint32_t>(g.names_.size())};
    if (!g.by_name_.emplace(name, h).second) {
      throw Error(ErrorCode::kInvalidArgument, "node '" + name + "' listed twice");
    }
    g.names_.push_back(name);
  }
  g.adjacency_.resize(g.names_.size());

  auto resolve = [&g](const std::string& name) {
    auto it = g.by_name_.find(name);
    if (it == g.by_name_.end()) {
      throw Error(ErrorCode::kDanglingEdge, "edge endpoint '" + name + "' is not a node");
    }
    return it->second;
  };

  for (const auto& e : spec.edges) {
    const NodeHandle u = resolve(e.u), v = resolve(e.v);
    if (e.pu < 1 || e.pv < 1) throw Error(ErrorCode::kInvalidArgument, "ports must be positive");
    if (e.length <= 0) throw Error(ErrorCode::kInvalidArgument, "edge lengths must be positive");
    if (u == v && e.pu == e.pv) {
      throw Error(ErrorCode::kDuplicatePort,
                  "loop at '" + e.u + "' uses port " + std::to_string(e.pu) + " twice");
    }
    const auto index = static_cast<std::uint32_t>(g.lengths_.size());
    for (const auto& [at, port, to, in] : {std::tuple{u, e.pu, v, e.pv}, std::tuple{v, e.pv, u, e.pu}}) {
      auto& halves = g.adjacency_[at.id];
      if (std::any_of(halves.begin(), halves.end(), [p = port](const Half& h) { return h.port == p; })) {
        throw Error(ErrorCode::kDuplicatePort, "port " + std::to_string(port) + " used twice at '" +
                                                   g.names_[at.id] + "'");
      }
      halves.push_back(Half{port, to, in, index});
    }
    g.lengths_.push_back(e.length);
  }
  for (auto& halves : g.adjacency_) {
    std::sort(halves.begin(), halves.end(), [](const Half& a, const Half& b) { return a.port < b.port; });
  }

  if (!g.names_.empty()) {
    std::vector<bool> seen(g.names_.size(), false);
    std::deque<std::uint32_t> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (const auto& h : g.adjacency_[x]) {
        if (!seen[h.to.id]) {
          seen[h.to.id] = true;
          ++reached;
          queue.push_back(h.to.id);
        }
      }
    }
    if (reached != g.names_.size()) {
      throw Error(ErrorCode::kDisconnected, std::to_string(g.names_.size() - reached) +
                                                " node(s) unreachable from '" + g.names_[0] + "'");
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "graph has no nodes");
  }
  return g;
}

void FiniteGraph::check(NodeHandle v) const {
  if (v.id >= names_.size()) throw Error(ErrorCode::kUnknownNode, "handle " + std::to_string(v.id));
}

const FiniteGraph::Half* FiniteGraph::find(NodeHandle v, Port p) const {
  check(v);
  const auto& halves = adjacency_[v.id];
  auto it = std::lower_bound(halves.begin(), halves.end(), p,
                             [](const Half& h, Port q) { return h.port < q; });
  return it != halves.end() && it->port == p ? &*it : nullptr;
}

bool FiniteGraph::is_port(NodeHandle v, Port p) const { return find(v, p) != nullptr; }

std::optional<std::uint64_t> FiniteGraph::degree(NodeHandle v) const {
  check(v);
  return adjacency_[v.id].size();
}

EdgeTraversal FiniteGraph::traverse(NodeHandle v, Port p) const {
  const Half* h = find(v, p);
  if (h == nullptr) {
    throw Error(ErrorCode::kInvalidPort, std::to_string(p) + " at '" + names_[v.id] + "'");
  }
  return {v, p, h->to, h->in_port};
}

Rational FiniteGraph::edge_length(const EdgeId& e) const {
  const Half* h = find(e.node, e.port);
  if (h == nullptr) throw Error(ErrorCode::kInvalidPort, "no edge at port " + std::to_string(e.port));
  return lengths_[h->edge];
}

std::string FiniteGraph::node_name(NodeHandle v) const {
  check(v);
  return names_[v.id];
}

NodeHandle FiniteGraph::node(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) throw Error(ErrorCode::kUnknownNode, "'" + std::string(name) + "'");
  return it->second;
}

std::vector<NodeHandle> FiniteGraph::nodes() const {
  std::vector<NodeHandle> out;
  for (std::uint32_t i = 0; i < names_.size(); ++i) out.push_back(NodeHandle{i});
  return out;
}

std::vector<Port> FiniteGraph::ports(NodeHandle v) const {
  check(v);
  std::vector<Port> out;
  for (const auto& h : adjacency_[v.id]) out.push_back(h.port);
  return out;
}

GraphSpec random_connected_graph(std::size_t nodes, unsigned extra_edge_percent, std::uint64_t seed) {
  SplitMix64 rng(seed);
  GraphSpec spec;
  for (std::size_t i = 0; i < nodes; ++i) spec.nodes.push_back("n" + std::to_string(i));

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t v = 1; v < nodes; ++v) pairs.emplace(rng.below(v), v);
  for (std::size_t a = 0; a < nodes; ++a) {
    for (std::size_t b = a + 1; b < nodes; ++b) {
      if (!pairs.count({a, b}) && rng.below(100) < extra_edge_percent) pairs.emplace(a, b);
    }
  }

  std::vector<std::vector<Port>> free_ports(nodes);
  std::vector<std::size_t> degree(nodes, 0);
  for (const auto& [a, b] : pairs) {
    ++degree[a];
    ++degree[b];
  }
  for (std::size_t v = 0; v < nodes; ++v) {
    auto& ports = free_ports[v];
    ports.resize(degree[v]);
    std::iota(ports.begin(), ports.end(), Port{1});
    for (std::size_t k = ports.size(); k > 1; --k) std::swap(ports[k - 1], ports[rng.below(k)]);
  }
  for (const auto& [a, b] : pairs) {
    const Port pa = free_ports[a].back(), pb = free_ports[b].back();
    free_ports[a].pop_back();
    free_ports[b].pop_back();
    spec.edges.push_back({spec.nodes[a], pa, spec.nodes[b], pb, Rational(1)});
  }
  return spec;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kUnknownNode, "'" + std::string(s) + "' is not a coordinate");
  }
  return v;
}

struct PairHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const {
    return std::hash<std::int64_t>()(p.first) * 1000003u ^ std::hash<std::int64_t>()(p.second);
  }
};

// Shared plumbing: a lazy graph over canonical coordinates of type Coord.
template <typename Coord, typename Hash = std::hash<Coord>>
class LazyGraph : public PortLabeledGraph {
 public:
  explicit LazyGraph(Rational unit) : unit_(std::move(unit)) {
    if (unit_ <= 0) throw Error(ErrorCode::kInvalidArgument, "unit_length must be positive");
  }

  bool is_port(NodeHandle v, Port p) const override { return p >= 1 && p <= degree_of(coord(v)); }

  std::optional<std::uint64_t> degree(NodeHandle v) const override { return degree_of(coord(v)); }

  EdgeTraversal traverse(NodeHandle v, Port p) const override {
    const Coord c = coord(v);
    if (p < 1 || p > degree_of(c)) {
      throw Error(ErrorCode::kInvalidPort, std::to_string(p) + " at '" + name_of(c) + "'");
    }
    auto [next, in] = step(c, p);
    return {v, p, interner_.intern(next), in};
  }

  Rational edge_length(const EdgeId& e) const override {
    if (!is_port(e.node, e.port)) throw Error(ErrorCode::kInvalidPort, "no edge at port " + std::to_string(e.port));
    return unit_;
  }

  std::string node_name(NodeHandle v) const override { return name_of(coord(v)); }

  NodeHandle node(std::string_view name) const override { return interner_.intern(parse(name)); }

 protected:
  virtual Port degree_of(const Coord& c) const = 0;
  virtual std::pair<Coord, Port> step(const Coord& c, Port p) const = 0;
  virtual std::string name_of(const Coord& c) const = 0;
  virtual Coord parse(std::string_view name) const = 0;

 private:
  Coord coord(NodeHandle v) const {
    auto c = interner_.lookup(v);
    if (!c) throw Error(ErrorCode::kUnknownNode, "handle " + std::to_string(v.id));
    return *c;
  }

  Rational unit_;
  Interner<Coord, Hash> interner_;
};

class InfiniteLine final : public LazyGraph<std::int64_t> {
 public:
  using LazyGraph::LazyGraph;

 protected:
  Port degree_of(const std::int64_t&) const override { return 2; }
  std::pair<std::int64_t, Port> step(const std::int64_t& x, Port p) const override {
    return p == 1 ? std::pair{x + 1, Port{2}} : std::pair{x - 1, Port{1}};
  }
  std::string name_of(const std::int64_t& x) const override { return std::to_string(x); }
  std::int64_t parse(std::string_view name) const override { return parse_int(name); }
};

using GridCoord = std::pair<std::int64_t, std::int64_t>;

class InfiniteGrid final : public LazyGraph<GridCoord, PairHash> {
 public:
  using LazyGraph::LazyGraph;

 protected:
  Port degree_of(const GridCoord&) const override { return 4; }
  std::pair<GridCoord, Port> step(const GridCoord& c, Port p) const override {
    static constexpr std::array<std::pair<int, int>, 4> kDelta{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    const auto [dx, dy] = kDelta[p - 1];
    return {{c.first + dx, c.second + dy}, static_cast<Port>((p + 1) % 4 + 1)};
  }
  std::string name_of(const GridCoord& c) const override {
    return std::to_string(c.first) + "," + std::to_string(c.second);
  }
  GridCoord parse(std::string_view name) const override {
    const auto comma = name.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::kUnknownNode, "'" + std::string(name) + "'");
    return {parse_int(name.substr(0, comma)), parse_int(name.substr(comma + 1))};
  }
};

// (depth, index) with index < 2^depth; the left child of (d, x) is (d + 1, 2x).
class InfiniteBinaryTree final : public LazyGraph<GridCoord, PairHash> {
 public:
  using LazyGraph::LazyGraph;

 protected:
  static constexpr std::int64_t kMaxDepth = 62;

  Port degree_of(const GridCoord& c) const override { return c.first == 0 ? 2 : 3; }
  std::pair<GridCoord, Port> step(const GridCoord& c, Port p) const override {
    const auto [d, x] = c;
    const bool root = d == 0;
    if (!root && p == 1) {
      const Port back = d == 1 ? static_cast<Port>(1 + (x & 1)) : static_cast<Port>(2 + (x & 1));
      return {{d - 1, x >> 1}, back};
    }
    if (d >= kMaxDepth) throw Error(ErrorCode::kInvalidArgument, "binary tree depth limit reached");
    const std::int64_t child_bit = root ? static_cast<std::int64_t>(p) - 1 : static_cast<std::int64_t>(p) - 2;
    return {{d + 1, 2 * x + child_bit}, Port{1}};
  }
  std::string name_of(const GridCoord& c) const override {
    if (c.first == 0) return "root";
    std::string path(static_cast<std::size_t>(c.first), 'L');
    for (std::int64_t k = 0; k < c.first; ++k) {
      if ((c.second >> (c.first - 1 - k)) & 1) path[static_cast<std::size_t>(k)] = 'R';
    }
    return path;
  }
  GridCoord parse(std::string_view name) const override {
    if (name == "root") return {0, 0};
    if (name.empty() || name.size() > kMaxDepth) throw Error(ErrorCode::kUnknownNode, "'" + std::string(name) + "'");
    std::int64_t x = 0;
    for (char ch : name) {
      if (ch != 'L' && ch != 'R') throw Error(ErrorCode::kUnknownNode, "'" + std::string(name) + "'");
      x = 2 * x + (ch == 'R' ? 1 : 0);
    }
    return {static_cast<std::int64_t>(name.size()), x};
  }
};

}  // namespace

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  if (name == "infinite_line") return GeneratorKind::kInfiniteLine;
  if (name == "infinite_grid") return GeneratorKind::kInfiniteGrid;
  if (name == "infinite_binary_tree") return GeneratorKind::kInfiniteBinaryTree;
  return std::nullopt;
}

std::string_view generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kInfiniteLine: return "infinite_line";
    case GeneratorKind::kInfiniteGrid: return "infinite_grid";
    case GeneratorKind::kInfiniteBinaryTree: return "infinite_binary_tree";
  }
  return "";
}

std::unique_ptr<PortLabeledGraph> make_generator(GeneratorKind kind, Rational unit_length) {
  switch (kind) {
    case GeneratorKind::kInfiniteLine: return std::make_unique<InfiniteLine>(std::move(unit_length));
    case GeneratorKind::kInfiniteGrid: return std::make_unique<InfiniteGrid>(std::move(unit_length));
    case GeneratorKind::kInfiniteBinaryTree:
      return std::make_unique<InfiniteBinaryTree>(std::move(unit_length));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown generator");
}

}  // namespace tunnelmeet
