#include "nmr/netcore.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "nmr/error.hpp"

namespace nmr {

std::optional<NodeId> Diagram::find(std::string_view name) const {
  for (NodeId i = 0; i < size(); ++i)
    if (nodes_[i] == name) return i;
  return std::nullopt;
}

NodeId Diagram::id(std::string_view name) const {
  auto n = find(name);
  if (!n) throw Error(ErrorKind::UnknownNode, std::string(name));
  return *n;
}

std::optional<int> Diagram::arrow_between(NodeId s, NodeId t) const {
  for (int a : out_.at(s))
    if (arrows_[a].target == t) return a;
  return std::nullopt;
}

std::optional<int> Diagram::find_arrow(NodeId s, NodeId t, Polarity p) const {
  auto a = arrow_between(s, t);
  if (a && arrows_[*a].polarity == p) return a;
  return std::nullopt;
}

NodeId Diagram::endpoint(const Path& p) const {
  return p.arrows.empty() ? p.origin : arrows_.at(p.arrows.back()).target;
}

Polarity Diagram::sign(const Path& p) const {
  return p.arrows.empty() ? Polarity::Positive : arrows_.at(p.arrows.back()).polarity;
}

std::vector<NodeId> Diagram::path_nodes(const Path& p) const {
  std::vector<NodeId> out{p.origin};
  for (int a : p.arrows) out.push_back(arrows_.at(a).target);
  return out;
}

std::string Diagram::arrow_label(int a) const {
  const Arrow& ar = arrows_.at(a);
  return nodes_[ar.source] + (ar.polarity == Polarity::Positive ? "->" : "!>") + nodes_[ar.target];
}

std::string Diagram::path_label(const Path& p) const {
  std::string out = nodes_.at(p.origin);
  for (int a : p.arrows) {
    const Arrow& ar = arrows_.at(a);
    out += (ar.polarity == Polarity::Positive ? "->" : "!>") + nodes_[ar.target];
  }
  return out;
}

RawDiagram Diagram::raw() const {
  RawDiagram r;
  r.nodes = nodes_;
  for (const Arrow& a : arrows_) r.arrows.push_back({nodes_[a.source], nodes_[a.target], a.polarity});
  return r;
}

namespace {

std::string describe_cycle(const Diagram& g, const std::vector<std::vector<NodeId>>& succ) {
  int n = static_cast<int>(succ.size());
  std::vector<int> state(n, 0);
  std::vector<NodeId> stack;
  std::vector<NodeId> cycle;
  auto dfs = [&](auto&& self, NodeId v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    for (NodeId w : succ[v]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        cycle.push_back(w);
        return true;
      }
      if (state[w] == 0 && self(self, w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (NodeId v = 0; v < n && cycle.empty(); ++v)
    if (state[v] == 0) dfs(dfs, v);
  std::string out;
  for (std::size_t i = 0; i < cycle.size(); ++i) out += (i ? " -> " : "") + g.name(cycle[i]);
  return out;
}

}  // namespace

Diagram validate_diagram(const RawDiagram& raw) {
  Diagram g;
  std::map<std::string, NodeId, std::less<>> index;
  for (const std::string& n : raw.nodes) {
    if (n.empty()) throw Error(ErrorKind::InvalidArgument, "empty node name");
    if (!index.emplace(n, static_cast<NodeId>(g.nodes_.size())).second)
      throw Error(ErrorKind::Duplicate, "node " + n);
    g.nodes_.push_back(n);
  }
  int n = g.size();
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  std::map<std::pair<NodeId, NodeId>, Polarity> seen;
  for (const RawArrow& ra : raw.arrows) {
    auto s = index.find(ra.source), t = index.find(ra.target);
    if (s == index.end()) throw Error(ErrorKind::DanglingNode, ra.source);
    if (t == index.end()) throw Error(ErrorKind::DanglingNode, ra.target);
    if (s->second == t->second) throw Error(ErrorKind::Cycle, ra.source + " -> " + ra.source);
    auto key = std::make_pair(s->second, t->second);
    if (auto it = seen.find(key); it != seen.end()) {
      if (it->second != ra.polarity)
        throw Error(ErrorKind::HardContradiction, ra.source + " -> " + ra.target + " and " +
                                                      ra.source + " !> " + ra.target);
      throw Error(ErrorKind::Duplicate, "arrow " + ra.source + " " + ra.target);
    }
    seen.emplace(key, ra.polarity);
    int idx = static_cast<int>(g.arrows_.size());
    g.arrows_.push_back({s->second, t->second, ra.polarity});
    g.out_[s->second].push_back(idx);
    g.in_[t->second].push_back(idx);
  }

  // Kahn's algorithm with name order as tie-break keeps topo_order canonical.
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<NodeId>> succ(n);
  for (const Arrow& a : g.arrows_) {
    ++indeg[a.target];
    succ[a.source].push_back(a.target);
  }
  auto by_name = [&](NodeId a, NodeId b) { return g.nodes_[a] > g.nodes_[b]; };
  std::priority_queue<NodeId, std::vector<NodeId>, decltype(by_name)> ready(by_name);
  for (NodeId v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    g.topo_.push_back(v);
    for (NodeId w : succ[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (static_cast<int>(g.topo_.size()) != n) throw Error(ErrorKind::Cycle, describe_cycle(g, succ));
  g.rank_.assign(n, 0);
  for (int i = 0; i < n; ++i) g.rank_[g.topo_[i]] = i;
  return g;
}

Diagram diagram_from_arrows(const std::vector<RawArrow>& arrows,
                            const std::vector<std::string>& extra_nodes) {
  RawDiagram raw;
  std::set<std::string> seen;
  auto add = [&](const std::string& s) {
    if (seen.insert(s).second) raw.nodes.push_back(s);
  };
  for (const RawArrow& a : arrows) {
    add(a.source);
    add(a.target);
  }
  for (const std::string& s : extra_nodes) add(s);
  raw.arrows = arrows;
  return validate_diagram(raw);
}

PathKind classify(const Diagram& g, const std::vector<int>& arrows) {
  int neg = 0;
  for (int a : arrows)
    if (g.arrows()[a].polarity == Polarity::Negative) ++neg;
  if (neg == 0) return PathKind::PotentialPositive;
  if (neg == 1 && g.arrows()[arrows.back()].polarity == Polarity::Negative)
    return PathKind::PotentialNegative;
  return PathKind::Generalized;
}

bool kind_consistent(const Diagram& g, const Path& p) {
  if (p.arrows.empty()) return false;
  NodeId at = p.origin;
  for (int a : p.arrows) {
    if (a < 0 || a >= static_cast<int>(g.arrows().size())) return false;
    if (g.arrows()[a].source != at) return false;
    at = g.arrows()[a].target;
  }
  PathKind actual = classify(g, p.arrows);
  if (p.kind == PathKind::Generalized) return true;
  return p.kind == actual;
}

namespace {

void extend(const Diagram& g, NodeId at, NodeId y, std::vector<int>& stack, NodeId origin,
            std::vector<Path>& out) {
  for (int a : g.out(at)) {
    const Arrow& ar = g.arrows()[a];
    stack.push_back(a);
    if (ar.target == y) out.push_back({origin, stack, classify(g, stack)});
    // a negative arrow ends the chain
    if (ar.polarity == Polarity::Positive) extend(g, ar.target, y, stack, origin, out);
    stack.pop_back();
  }
}

}  // namespace

std::vector<Path> generalized_paths(const Diagram& g, NodeId x, NodeId y) {
  if (x < 0 || x >= g.size() || y < 0 || y >= g.size())
    throw Error(ErrorKind::UnknownNode, "node id out of range");
  std::vector<Path> out;
  if (x == y) return out;
  std::vector<int> stack;
  extend(g, x, y, stack, x, out);
  for (Path& p : out) p.kind = PathKind::Generalized;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Path> potential_paths(const Diagram& g, NodeId x, NodeId y) {
  std::vector<Path> out;
  for (Path p : generalized_paths(g, x, y)) {
    PathKind k = classify(g, p.arrows);
    if (k == PathKind::Generalized) continue;
    p.kind = k;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Path> generalized_paths(const Diagram& g, std::string_view x, std::string_view y) {
  return generalized_paths(g, g.id(x), g.id(y));
}

std::vector<Path> potential_paths(const Diagram& g, std::string_view x, std::string_view y) {
  return potential_paths(g, g.id(x), g.id(y));
}

int degree(const Diagram& g, NodeId x, const Path& sigma) {
  if (x < 0 || x >= g.size()) throw Error(ErrorKind::UnknownNode, "node id out of range");
  if (sigma.origin != x || sigma.arrows.empty())
    throw Error(ErrorKind::InvalidArgument, "path does not start at the given origin");
  NodeId y = g.endpoint(sigma);
  // longest chain of positive arrows from x to a predecessor of y, plus the final arrow
  std::vector<int> best(g.size(), -1);
  best[x] = 0;
  int result = 0;
  for (NodeId v : g.topo_order()) {
    if (best[v] < 0) continue;
    for (int a : g.out(v)) {
      const Arrow& ar = g.arrows()[a];
      if (ar.target == y) result = std::max(result, best[v] + 1);
      if (ar.polarity == Polarity::Positive) best[ar.target] = std::max(best[ar.target], best[v] + 1);
    }
  }
  return result;
}

}  // namespace nmr
