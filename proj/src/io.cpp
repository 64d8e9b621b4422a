#include "tunnelmeet/io.hpp"

#include <cstdio>
#include <iterator>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tunnelmeet/error.hpp"

namespace tunnelmeet {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Parsing with line numbers. A SAX pass over a newline-counting iterator
// records the line of every value under its JSON pointer.

class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator(const char* p, std::size_t* line) : p_(p), line_(line) {}
  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    if (*p_ == '\n') ++*line_;
    ++p_;
    return *this;
  }
  bool operator==(const CountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const CountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_;
  std::size_t* line_;
};

class LineRecorder : public nlohmann::json_sax<json> {
 public:
  LineRecorder(const std::size_t* line, std::map<std::string, std::size_t>* lines) : line_(line), lines_(lines) {}

  bool null() override { return scalar(); }
  bool boolean(bool) override { return scalar(); }
  bool number_integer(number_integer_t) override { return scalar(); }
  bool number_unsigned(number_unsigned_t) override { return scalar(); }
  bool number_float(number_float_t, const string_t&) override { return scalar(); }
  bool string(string_t&) override { return scalar(); }
  bool binary(binary_t&) override { return scalar(); }
  bool start_object(std::size_t) override {
    record();
    stack_.push_back({false, 0, {}});
    return true;
  }
  bool key(string_t& k) override {
    stack_.back().key = k;
    return true;
  }
  bool end_object() override {
    stack_.pop_back();
    advance();
    return true;
  }
  bool start_array(std::size_t) override {
    record();
    stack_.push_back({true, 0, {}});
    return true;
  }
  bool end_array() override {
    stack_.pop_back();
    advance();
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
  };

  bool scalar() {
    record();
    advance();
    return true;
  }
  void record() {
    std::string path;
    for (const auto& f : stack_) {
      path += '/';
      path += f.array ? std::to_string(f.index) : escape(f.key);
    }
    lines_->emplace(path, *line_);
  }
  static std::string escape(const std::string& k) {
    std::string out;
    for (char c : k) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }
  void advance() {
    if (!stack_.empty() && stack_.back().array) ++stack_.back().index;
  }

  const std::size_t* line_;
  std::map<std::string, std::size_t>* lines_;
  std::vector<Frame> stack_;
};

struct Document {
  json root;
  std::map<std::string, std::size_t> lines;
};

Document parse_document(std::string_view text) {
  Document d;
  try {
    d.root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t k = 0; k < text.size() && k + 1 < e.byte; ++k) line += text[k] == '\n';
    throw Error(ErrorCode::kSchema, "line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  std::size_t line = 1;
  LineRecorder recorder(&line, &d.lines);
  json::sax_parse(CountingIterator(text.data(), &line), CountingIterator(text.data() + text.size(), &line),
                  &recorder);
  return d;
}

// A value together with its position in the document.
class Node {
 public:
  Node(const Document& d, const json& v, std::string path) : d_(&d), v_(&v), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& why) const {
    std::string where = path_.empty() ? "/" : path_;
    const auto it = d_->lines.find(path_);
    if (it != d_->lines.end()) where = "line " + std::to_string(it->second) + ", " + where;
    throw Error(ErrorCode::kSchema, where + ": " + why);
  }

  const json& raw() const { return *v_; }
  bool has(const std::string& key) const { return v_->is_object() && v_->contains(key); }

  Node at(const std::string& key) const {
    if (!v_->is_object()) fail("expected an object");
    if (!v_->contains(key)) fail("missing field '" + key + "'");
    return Node(*d_, (*v_)[key], path_ + "/" + key);
  }
  std::optional<Node> get(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
  }
  std::vector<Node> items() const {
    if (!v_->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t k = 0; k < v_->size(); ++k) out.emplace_back(*d_, (*v_)[k], path_ + "/" + std::to_string(k));
    return out;
  }
  void only(std::initializer_list<std::string_view> keys) const {
    if (!v_->is_object()) fail("expected an object");
    for (const auto& [k, v] : v_->items()) {
      bool known = false;
      for (auto allowed : keys) known = known || k == allowed;
      if (!known) Node(*d_, v, path_ + "/" + k).fail("unknown field '" + k + "'");
    }
  }

  std::string str() const {
    if (!v_->is_string()) fail("expected a string");
    return v_->get<std::string>();
  }
  std::uint64_t uint() const {
    if (!v_->is_number_unsigned()) fail("expected a non-negative integer");
    return v_->get<std::uint64_t>();
  }
  std::uint64_t positive() const {
    const auto x = uint();
    if (x == 0) fail("expected a positive integer");
    return x;
  }
  Port port() const {
    const auto x = positive();
    if (x > 0xffffffffULL) fail("port out of range");
    return static_cast<Port>(x);
  }
  Rational rational() const {
    if (v_->is_number_integer()) return Rational(v_->get<std::int64_t>());
    if (!v_->is_string()) fail("expected a rational \"num/den\"");
    try {
      return parse_rational(v_->get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  QPoint point() const {
    const auto xy = items();
    if (xy.size() != 2) fail("expected a point [x, y]");
    return {xy[0].rational(), xy[1].rational()};
  }

 private:
  const Document* d_;
  const json* v_;
  std::string path_;
};

void check_schema(const Node& root, std::string_view expected, bool required) {
  if (!root.has("schema")) {
    if (required) root.fail("missing field 'schema'");
    return;
  }
  const Node s = root.at("schema");
  if (s.str() != expected) s.fail("expected schema '" + std::string(expected) + "'");
}

GraphSpec graph_from(const Node& root) {
  root.only({"schema", "nodes", "edges"});
  GraphSpec spec;
  for (const auto& n : root.at("nodes").items()) spec.nodes.push_back(n.str());
  for (const auto& e : root.at("edges").items()) {
    e.only({"u", "pu", "v", "pv", "len"});
    GraphSpec::Edge edge{e.at("u").str(), e.at("pu").port(), e.at("v").str(), e.at("pv").port(), 1};
    if (const auto len = e.get("len")) {
      edge.length = len->rational();
      if (edge.length <= 0) len->fail("edge length must be positive");
    }
    spec.edges.push_back(std::move(edge));
  }
  return spec;
}

Terrain terrain_from(const Node& root) {
  root.only({"schema", "outer", "holes"});
  auto polygon = [](const Node& n) {
    Polygon p;
    for (const auto& v : n.items()) p.push_back(v.point());
    return p;
  };
  Polygon outer = polygon(root.at("outer"));
  std::vector<Polygon> holes;
  if (const auto h = root.get("holes")) {
    for (const auto& hole : h->items()) holes.push_back(polygon(hole));
  }
  try {
    return Terrain(std::move(outer), std::move(holes));
  } catch (const Error& e) {
    root.fail(e.what());
  }
}

// ---------------------------------------------------------------------------
// Output.

json rational_json(const Rational& q) { return to_string(q); }

void put(json& obj, const std::string& key, const Rational& q, bool with_float) {
  obj[key] = rational_json(q);
  if (with_float) obj[key + "_float"] = to_double(q);
}

void put_point(json& obj, const std::string& key, const QPoint& p, bool with_float) {
  obj[key] = json::array({rational_json(p.x), rational_json(p.y)});
  if (with_float) obj[key + "_float"] = json::array({to_double(p.x), to_double(p.y)});
}

std::string_view world_name(WorldKind k) {
  switch (k) {
    case WorldKind::kGraph:
      return "graph";
    case WorldKind::kGenerator:
      return "generator";
    case WorldKind::kTerrain:
      return "terrain";
  }
  return "graph";
}

std::string point_name(const QPoint& p) { return to_string(p.x) + " " + to_string(p.y); }

}  // namespace

// ---------------------------------------------------------------------------

GraphSpec parse_graph_spec(std::string_view text) {
  const Document d = parse_document(text);
  const Node root(d, d.root, "");
  check_schema(root, "graph-v1", true);
  return graph_from(root);
}

Terrain parse_terrain(std::string_view text) {
  const Document d = parse_document(text);
  const Node root(d, d.root, "");
  check_schema(root, "terrain-v1", true);
  return terrain_from(root);
}

Scenario parse_scenario(std::string_view text) {
  const Document d = parse_document(text);
  const Node root(d, d.root, "");
  check_schema(root, "scenario-v1", true);
  root.only({"schema", "name", "world", "agents", "limits", "adversary", "epsilon"});
  Scenario s;

  const Node world = root.at("world");
  world.only({"graph", "generator", "terrain"});
  if (world.raw().size() != 1) world.fail("expected exactly one of 'graph', 'generator', 'terrain'");
  if (const auto g = world.get("graph")) {
    s.world = WorldKind::kGraph;
    check_schema(*g, "graph-v1", false);
    s.graph = graph_from(*g);
  } else if (const auto g = world.get("generator")) {
    s.world = WorldKind::kGenerator;
    s.generator = parse_generator_kind(g->str());
    if (!s.generator) g->fail("unknown generator '" + g->str() + "'");
  } else {
    const Node t = world.at("terrain");
    s.world = WorldKind::kTerrain;
    check_schema(t, "terrain-v1", false);
    s.terrain = terrain_from(t);
  }

  const auto agents = root.at("agents").items();
  if (agents.size() != 2) root.at("agents").fail("expected two agents");
  for (std::size_t k = 0; k < 2; ++k) {
    agents[k].only({"label", "start"});
    s.agents[k].label = agents[k].at("label").positive();
    const Node start = agents[k].at("start");
    if (s.world == WorldKind::kTerrain) {
      s.agents[k].point = start.point();
    } else {
      s.agents[k].node = start.str();
    }
  }
  if (s.agents[0].label == s.agents[1].label) agents[1].at("label").fail("labels must differ");

  const Node limits = root.at("limits");
  limits.only({"phase_cap", "step_budget"});
  s.limits.phase_cap = limits.at("phase_cap").uint();
  if (const auto b = limits.get("step_budget")) s.limits.step_budget = b->positive();

  s.strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
  for (std::uint64_t k = 0; k < 20; ++k) s.seeds.push_back(k);
  if (const auto adv = root.get("adversary")) {
    adv->only({"strategies", "seeds"});
    if (const auto list = adv->get("strategies")) {
      s.strategies.clear();
      for (const auto& n : list->items()) {
        const auto kind = parse_strategy(n.str());
        if (!kind) n.fail("unknown strategy '" + n.str() + "'");
        s.strategies.push_back(*kind);
      }
      if (s.strategies.empty()) list->fail("expected at least one strategy");
    }
    if (const auto list = adv->get("seeds")) {
      s.seeds.clear();
      for (const auto& n : list->items()) s.seeds.push_back(n.uint());
      if (s.seeds.empty()) list->fail("expected at least one seed");
    }
  }

  if (const auto eps = root.get("epsilon")) {
    if (s.world != WorldKind::kTerrain) eps->fail("epsilon applies to terrain worlds only");
    s.epsilon = eps->rational();
    if (*s.epsilon <= 0) eps->fail("epsilon must be positive");
  }
  return s;
}

const PortLabeledGraph& World::ports() const {
  if (graph) return *graph;
  if (generator) return *generator;
  throw Error(ErrorCode::kInvalidArgument, "terrain worlds have no port graph");
}

World load_world(std::string_view text_or_generator) {
  World w;
  if (const auto kind = parse_generator_kind(text_or_generator)) {
    w.kind = WorldKind::kGenerator;
    w.generator = make_generator(*kind);
    return w;
  }
  const Document d = parse_document(text_or_generator);
  const Node root(d, d.root, "");
  const std::string schema = root.at("schema").str();
  if (schema == "graph-v1") {
    w.kind = WorldKind::kGraph;
    w.graph = FiniteGraph::build(graph_from(root));
  } else if (schema == "terrain-v1") {
    w.kind = WorldKind::kTerrain;
    w.terrain = terrain_from(root);
  } else {
    root.at("schema").fail("expected 'graph-v1' or 'terrain-v1'");
  }
  return w;
}

RunResult run_scenario(const Scenario& s) {
  RunResult out;
  out.world = s.world;
  out.epsilon = s.epsilon;
  for (std::size_t k = 0; k < 2; ++k) out.labels[k] = s.agents[k].label;

  if (s.world == WorldKind::kTerrain) {
    const Terrain& t = *s.terrain;
    const QPoint a = s.agents[0].point, b = s.agents[1].point;
    out.starts = {point_name(a), point_name(b)};
    PlanarRoute r1, r2;
    if (s.epsilon) {
      auto res = approx_rendezvous(t, a, b, s.agents[0].label, s.agents[1].label, *s.epsilon, s.limits,
                                   s.strategies, s.seeds);
      r1 = std::move(res.r1);
      r2 = std::move(res.r2);
      out.report = std::move(res.report);
    } else {
      std::tie(r1, r2) = geometric_rv_pair(t, a, s.agents[0].label, b, s.agents[1].label, s.limits);
      const auto p1 = r1.vertices(), p2 = r2.vertices();
      out.report = verify_rendezvous_planar(p1, p2, s.strategies, s.seeds);
    }
    out.route_segments = {r1.segments.size(), r2.segments.size()};
    out.route_phases = {r1.phase_marks.size(), r2.phase_marks.size()};
    out.containment_violations = containment_violations(t, r1) + containment_violations(t, r2);
    out.meeting_names.assign(out.report.entries.size(), std::nullopt);
    return out;
  }

  std::optional<FiniteGraph> finite;
  std::unique_ptr<PortLabeledGraph> lazy;
  if (s.world == WorldKind::kGraph) {
    finite = FiniteGraph::build(*s.graph);
  } else {
    lazy = make_generator(*s.generator);
  }
  const PortLabeledGraph& g = finite ? static_cast<const PortLabeledGraph&>(*finite) : *lazy;
  const NodeHandle v1 = g.node(s.agents[0].node), v2 = g.node(s.agents[1].node);
  out.starts = {g.node_name(v1), g.node_name(v2)};
  const auto [r1, r2] = graph_rv_pair(g, v1, s.agents[0].label, v2, s.agents[1].label, s.limits);
  out.route_segments = {r1.steps.size(), r2.steps.size()};
  out.route_phases = {r1.phases(), r2.phases()};
  if (const auto cert = tunnel_check(r1, r2)) out.tunnel = cert->n;
  out.report = verify_rendezvous(g, r1, r2, s.strategies, s.seeds);
  // Edge meetings are named by the canonical endpoint and its port.
  for (const auto& e : out.report.entries) {
    const auto& loc = e.verdict.location;
    if (!e.verdict.met || !loc) {
      out.meeting_names.push_back(std::nullopt);
    } else if (loc->node) {
      out.meeting_names.push_back(g.node_name(*loc->node));
    } else {
      out.meeting_names.push_back(g.node_name(loc->edge.node) + "#" + std::to_string(loc->edge.port));
    }
  }
  return out;
}

std::string verdict_json(const RunResult& r, bool with_float) {
  json doc;
  doc["schema"] = "verdict-v1";
  doc["enumeration"] = std::string(kEnumerationVersion);
  doc["world"] = std::string(world_name(r.world));
  doc["mode"] = r.epsilon ? "approximate" : "exact";
  if (r.epsilon) put(doc, "epsilon", *r.epsilon, with_float);
  json agents = json::array();
  for (std::size_t k = 0; k < 2; ++k) {
    agents.push_back({{"label", r.labels[k]},
                      {"start", r.starts[k]},
                      {"route_segments", r.route_segments[k]},
                      {"route_phases", r.route_phases[k]}});
  }
  doc["agents"] = agents;
  if (r.world == WorldKind::kTerrain) {
    doc["containment_violations"] = r.containment_violations;
  } else {
    doc["tunnel"] = r.tunnel ? json(*r.tunnel) : json(nullptr);
  }
  json entries = json::array();
  for (std::size_t k = 0; k < r.report.entries.size(); ++k) {
    const auto& e = r.report.entries[k];
    json j;
    j["strategy"] = std::string(strategy_name(e.strategy));
    j["seed"] = e.seed;
    j["met"] = e.verdict.met;
    j["success"] = e.success;
    j["sound"] = e.sound;
    put(j, "horizon", e.verdict.horizon, with_float);
    if (e.verdict.met) {
      put(j, "time", e.verdict.time, with_float);
      if (e.verdict.location) {
        json loc;
        if (e.verdict.location->node) {
          loc["node"] = *r.meeting_names[k];
        } else {
          loc["edge"] = *r.meeting_names[k];
          put(loc, "offset", e.verdict.location->offset, with_float);
        }
        j["location"] = loc;
      }
      if (e.verdict.point) put_point(j, "point", *e.verdict.point, with_float);
    }
    if (e.verdict.min_distance_sq) put(j, "min_distance_sq", *e.verdict.min_distance_sq, with_float);
    entries.push_back(std::move(j));
  }
  doc["entries"] = entries;
  doc["all_met"] = r.report.all_met;
  doc["vacuous"] = r.report.vacuous;
  return doc.dump(2) + "\n";
}

void write_planar_dump(std::ostream& out, const PlanarRoute& r) {
  out << "# start " << point_name(r.start) << '\n';
  std::size_t k = 0;
  for (std::size_t m = 0; m <= r.segments.size(); ++m) {
    while (k < r.phase_marks.size() && r.phase_marks[k] == m) out << "# phase " << ++k << '\n';
    if (m == r.segments.size()) break;
    const auto& s = r.segments[m];
    const char* kind = s.kind == SegmentKind::kFree ? "free" : s.kind == SegmentKind::kBoundaryHit ? "hit" : "return";
    out << to_string(s.end.x) << '\t' << to_string(s.end.y) << '\t' << kind << '\n';
  }
}

}  // namespace tunnelmeet
