#pragma once

// Anonymous port-labeled graphs, queried only through the local oracle an
// agent has: is a number a port here, where does a port lead, and with which
// entry port. Finite graphs come from a validated adjacency description;
// infinite ones are generated lazily from canonical coordinates.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tunnelmeet/rational.hpp"

namespace tunnelmeet {

using Port = std::uint32_t;

/// Opaque node identity, stable within one graph instance.
struct NodeHandle {
  std::uint32_t id = 0;

  auto operator<=>(const NodeHandle&) const = default;
};

/// Undirected edge identity: the endpoint (node, port) that sorts first.
struct EdgeId {
  NodeHandle node;
  Port port = 0;

  auto operator<=>(const EdgeId&) const = default;
};

struct EdgeTraversal {
  NodeHandle from;
  Port out_port = 0;
  NodeHandle to;
  Port in_port = 0;

  EdgeTraversal reversed() const { return {to, in_port, from, out_port}; }
  EdgeId edge() const {
    const EdgeId a{from, out_port}, b{to, in_port};
    return a < b ? a : b;
  }
  /// True when the traversal runs from the canonical endpoint of its edge.
  bool canonical_direction() const { return edge() == EdgeId{from, out_port}; }

  bool operator==(const EdgeTraversal&) const = default;
};

class PortLabeledGraph {
 public:
  virtual ~PortLabeledGraph() = default;

  /// Throws Error(kUnknownNode) for handles this graph never issued.
  virtual bool is_port(NodeHandle v, Port p) const = 0;

  /// nullopt for nodes of infinite degree.
  virtual std::optional<std::uint64_t> degree(NodeHandle v) const = 0;

  /// Throws Error(kInvalidPort) unless is_port(v, p).
  virtual EdgeTraversal traverse(NodeHandle v, Port p) const = 0;

  virtual Rational edge_length(const EdgeId& e) const = 0;

  virtual std::string node_name(NodeHandle v) const = 0;

  /// Resolves a canonical name; throws Error(kUnknownNode).
  virtual NodeHandle node(std::string_view name) const = 0;
};

// ---------------------------------------------------------------------------
// Finite graphs.

struct GraphSpec {
  struct Edge {
    std::string u;
    Port pu = 0;
    std::string v;
    Port pv = 0;
    Rational length = 1;
  };
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
};

class FiniteGraph final : public PortLabeledGraph {
 public:
  /// Rejects duplicate ports (kDuplicatePort), edges naming unknown nodes
  /// (kDanglingEdge), non-positive ports or lengths (kInvalidArgument) and
  /// graphs that are not connected (kDisconnected).
  static FiniteGraph build(const GraphSpec& spec);

  bool is_port(NodeHandle v, Port p) const override;
  std::optional<std::uint64_t> degree(NodeHandle v) const override;
  EdgeTraversal traverse(NodeHandle v, Port p) const override;
  Rational edge_length(const EdgeId& e) const override;
  std::string node_name(NodeHandle v) const override;
  NodeHandle node(std::string_view name) const override;

  std::size_t num_nodes() const { return names_.size(); }
  std::size_t num_edges() const { return lengths_.size(); }
  std::vector<NodeHandle> nodes() const;
  /// Ports at v in increasing order.
  std::vector<Port> ports(NodeHandle v) const;

 private:
  struct Half {
    Port port;
    NodeHandle to;
    Port in_port;
    std::uint32_t edge;
  };

  const Half* find(NodeHandle v, Port p) const;
  void check(NodeHandle v) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeHandle> by_name_;
  std::vector<std::vector<Half>> adjacency_;  // sorted by port
  std::vector<Rational> lengths_;
};

/// Random connected graph: a random spanning tree plus each remaining pair
/// joined with probability `extra_edge_percent`/100; ports at every node are
/// a random permutation of 1..degree. Nodes are named "n0", "n1", ...
GraphSpec random_connected_graph(std::size_t nodes, unsigned extra_edge_percent, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Lazy infinite graphs.

enum class GeneratorKind { kInfiniteLine, kInfiniteGrid, kInfiniteBinaryTree };

std::optional<GeneratorKind> parse_generator_kind(std::string_view name);
std::string_view generator_name(GeneratorKind kind);

/// Port conventions:
///   line: port 1 = successor (x + 1), port 2 = predecessor; names "x".
///   grid: ports 1..4 = E, N, W, S; names "x,y".
///   binary tree: root "root" has ports 1 (left child) and 2 (right child);
///     any other node, named by its L/R path from the root, has port 1 to its
///     parent, 2 to its left child and 3 to its right child.
/// Every edge has length unit_length.
std::unique_ptr<PortLabeledGraph> make_generator(GeneratorKind kind, Rational unit_length = 1);

// ---------------------------------------------------------------------------

/// Thread-safe dense numbering of canonical keys, used by lazy graphs.
template <typename Key, typename Hash = std::hash<Key>>
class Interner {
 public:
  NodeHandle intern(const Key& key) const {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(keys_.size()));
    if (inserted) keys_.push_back(key);
    return NodeHandle{it->second};
  }

  std::optional<Key> lookup(NodeHandle h) const {
    std::lock_guard lock(mutex_);
    if (h.id >= keys_.size()) return std::nullopt;
    return keys_[h.id];
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return keys_.size();
  }

 private:
  mutable std::mutex mutex_;
  mutable std::unordered_map<Key, std::uint32_t, Hash> ids_;
  mutable std::vector<Key> keys_;
};

}  // namespace tunnelmeet
