#include "tunnelmeet/route.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "tunnelmeet/error.hpp"

namespace tunnelmeet {

std::size_t Route::prefix_length(std::size_t p) const {
  if (p > phase_marks.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "route has " + std::to_string(phase_marks.size()) + " phases, asked for " + std::to_string(p));
  }
  return p == phase_marks.size() ? steps.size() : phase_marks[p];
}

Route Route::phase_prefix(std::size_t p) const {
  const std::size_t len = prefix_length(p);
  Route out{start, {steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(len)},
            {phase_marks.begin(), phase_marks.begin() + static_cast<std::ptrdiff_t>(p)}};
  return out;
}

Route reverse_route(const Route& r) {
  Route out{r.end(), {}, {}};
  out.steps.reserve(r.steps.size());
  for (auto it = r.steps.rbegin(); it != r.steps.rend(); ++it) out.steps.push_back(it->reversed());
  return out;
}

void append(Route& r, const Route& tail) {
  if (tail.start != r.end()) throw Error(ErrorCode::kInvalidArgument, "appended route does not start at the end");
  const std::size_t offset = r.steps.size();
  r.steps.insert(r.steps.end(), tail.steps.begin(), tail.steps.end());
  for (auto m : tail.phase_marks) r.phase_marks.push_back(m + offset);
}

void validate_route(const PortLabeledGraph& g, const Route& r) {
  NodeHandle at = r.start;
  for (std::size_t m = 0; m < r.steps.size(); ++m) {
    const auto& e = r.steps[m];
    const std::string where = "step " + std::to_string(m + 1) + ": ";
    if (e.from != at) throw Error(ErrorCode::kInvalidArgument, where + "does not continue the route");
    if (!g.is_port(e.from, e.out_port)) throw Error(ErrorCode::kInvalidArgument, where + "port is not available");
    if (g.traverse(e.from, e.out_port) != e) throw Error(ErrorCode::kInvalidArgument, where + "disagrees with the graph");
    at = e.to;
  }
  for (std::size_t k = 0; k < r.phase_marks.size(); ++k) {
    if (r.phase_marks[k] > r.steps.size() || (k > 0 && r.phase_marks[k] < r.phase_marks[k - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "phase mark " + std::to_string(k + 1) + " out of order");
    }
  }
}

std::vector<std::size_t> phase_closure_violations(const Route& r) {
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < r.phase_marks.size(); ++k) {
    const std::size_t m = r.phase_marks[k];
    const NodeHandle at = m == 0 ? r.start : r.steps[m - 1].to;
    if (at != r.start) bad.push_back(k + 1);
  }
  if (r.end() != r.start) bad.push_back(r.phase_marks.size() + 1);
  return bad;
}

void write_route_dump(std::ostream& out, const PortLabeledGraph& g, const Route& r) {
  out << "# start " << g.node_name(r.start) << '\n';
  std::size_t k = 0;
  for (std::size_t m = 0; m <= r.steps.size(); ++m) {
    while (k < r.phase_marks.size() && r.phase_marks[k] == m) out << "# phase " << ++k << '\n';
    if (m == r.steps.size()) break;
    const auto& e = r.steps[m];
    out << g.node_name(e.from) << '\t' << e.out_port << '\t' << g.node_name(e.to) << '\t' << e.in_port << '\n';
  }
}

Route read_route_dump(std::istream& in, const PortLabeledGraph& g) {
  Route r;
  bool have_start = false;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&lineno](const std::string& why) {
    return Error(ErrorCode::kSchema, "route dump line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# start ", 0) == 0) {
      r.start = g.node(line.substr(8));
      have_start = true;
    } else if (line.rfind("# phase ", 0) == 0) {
      if (std::stoull(line.substr(8)) != r.phase_marks.size() + 1) throw fail("phases out of order");
      r.phase_marks.push_back(r.steps.size());
    } else if (line[0] == '#') {
      continue;
    } else {
      std::istringstream fields(line);
      std::string from, to;
      Port out_port = 0, in_port = 0;
      if (!std::getline(fields, from, '\t') || !(fields >> out_port) || !fields.ignore(1) ||
          !std::getline(fields, to, '\t') || !(fields >> in_port)) {
        throw fail("expected from<TAB>out_port<TAB>to<TAB>in_port");
      }
      r.steps.push_back({g.node(from), out_port, g.node(to), in_port});
    }
  }
  if (!have_start) throw fail("missing '# start' header");
  validate_route(g, r);
  return r;
}

}  // namespace tunnelmeet
