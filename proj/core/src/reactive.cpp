#include "nmr/reactive.hpp"

#include <algorithm>
#include <set>

#include "nmr/error.hpp"

namespace nmr {

namespace {

void check_node(const Diagram& g, NodeId n) {
  if (n < 0 || n >= g.size()) throw Error(ErrorKind::UnknownNode, "node id out of range");
}

// Doubles needed so that nothing beyond the valid paths in `vs` is walkable:
// from the end of each walkable path, every continuation that is not itself
// valid gets blocked, keyed by the path's first arrow.
std::set<DoubleArrow> needed_doubles(const Diagram& g, const std::vector<Path>& walkable,
                                     const ValidSet& vs, const std::set<DoubleArrow>& have) {
  std::set<DoubleArrow> out;
  for (const Path& p : walkable) {
    int t = p.arrows.front();
    for (int b : g.out(g.endpoint(p))) {
      if (have.count({t, b})) continue;
      Path ext = p;
      ext.arrows.push_back(b);
      if (g.sign(p) == Polarity::Positive && vs.contains(ext)) continue;
      out.insert({t, b});
    }
  }
  return out;
}

}  // namespace

ReactiveDiagram compile(const Diagram& g, NodeId origin) {
  check_node(g, origin);
  ValidSet vs = valid_paths(g, Mode::OffPathSplit);
  auto mine = vs.from(origin);
  auto d = needed_doubles(g, mine, vs, {});
  return {g, origin, std::vector<DoubleArrow>(d.begin(), d.end())};
}

std::vector<Path> traverse(const ReactiveDiagram& r) {
  const Diagram& g = r.base;
  std::vector<Path> out;
  std::vector<int> stack;
  std::multiset<int> blocked;
  auto walk = [&](auto&& self, NodeId at) -> void {
    for (int a : g.out(at)) {
      if (blocked.count(a)) continue;
      stack.push_back(a);
      std::vector<int> fired;
      for (const DoubleArrow& d : r.doubles)
        if (d.trigger == a) fired.push_back(d.blocked);
      for (int b : fired) blocked.insert(b);
      out.push_back({r.origin, stack, classify(g, stack)});
      self(self, g.arrows()[a].target);
      for (int b : fired) blocked.erase(blocked.find(b));
      stack.pop_back();
    }
  };
  walk(walk, r.origin);
  std::sort(out.begin(), out.end());
  return out;
}

ReactiveDiagram recompile_fixpoint(const ReactiveDiagram& r) {
  ValidSet vs = valid_paths(r.base, Mode::OffPathSplit);
  std::set<DoubleArrow> have(r.doubles.begin(), r.doubles.end());
  auto extra = needed_doubles(r.base, traverse(r), vs, have);
  ReactiveDiagram out = r;
  have.insert(extra.begin(), extra.end());
  out.doubles.assign(have.begin(), have.end());
  return out;
}

Diagram erase_doubles(const ReactiveDiagram& r) { return r.base; }

const char* label_name(PairLabel l) {
  switch (l) {
    case PairLabel::Star: return "*";
    case PairLabel::PPlus: return "p+";
    case PairLabel::PMinus: return "p-";
    case PairLabel::PBoth: return "p+-";
    case PairLabel::VPlus: return "v+";
    case PairLabel::VMinus: return "v-";
  }
  return "?";
}

MemoTrace memo_trace(const Diagram& g) {
  int n = g.size();
  MemoTrace tr;
  // direct links, then signs of potential paths propagated along positive arrows
  std::vector<std::vector<char>> reach_pos(n, std::vector<char>(n, 0)), reach_neg = reach_pos;
  for (NodeId x = 0; x < n; ++x) {
    std::vector<char> via(n, 0);
    via[x] = 1;
    for (NodeId v : g.topo_order()) {
      if (!via[v]) continue;
      for (int a : g.out(v)) {
        const Arrow& ar = g.arrows()[a];
        if (ar.polarity == Polarity::Positive) {
          via[ar.target] = 1;
          reach_pos[x][ar.target] = 1;
        } else {
          reach_neg[x][ar.target] = 1;
        }
      }
    }
  }
  for (NodeId x = 0; x < n; ++x)
    for (NodeId y = 0; y < n; ++y) {
      if (x == y) continue;
      PairLabel l = PairLabel::Star;
      if (auto a = g.arrow_between(x, y))
        l = g.arrows()[*a].polarity == Polarity::Positive ? PairLabel::VPlus : PairLabel::VMinus;
      else if (reach_pos[x][y] && reach_neg[x][y])
        l = PairLabel::PBoth;
      else if (reach_pos[x][y])
        l = PairLabel::PPlus;
      else if (reach_neg[x][y])
        l = PairLabel::PMinus;
      tr.propagated[{x, y}] = l;
    }

  // arbitration over predecessor lists, targets in topological order
  tr.final = tr.propagated;
  auto vplus = [&](NodeId a, NodeId b) { return a != b && tr.final.at({a, b}) == PairLabel::VPlus; };
  for (NodeId y : g.topo_order()) {
    for (NodeId x = 0; x < n; ++x) {
      if (x == y) continue;
      PairLabel& l = tr.final[{x, y}];
      if (l == PairLabel::VPlus || l == PairLabel::VMinus || l == PairLabel::Star) continue;
      std::vector<int> cands;
      for (int a : g.in(y))
        if (vplus(x, g.arrows()[a].source)) cands.push_back(a);
      std::vector<int> kept;
      for (int c : cands) {
        bool beaten = false;
        for (int c2 : cands) {
          const Arrow &ac = g.arrows()[c], &ac2 = g.arrows()[c2];
          if (ac.polarity != ac2.polarity && vplus(ac2.source, ac.source)) beaten = true;
        }
        if (!beaten) kept.push_back(c);
      }
      l = PairLabel::Star;
      if (kept.empty()) continue;
      Polarity s = g.arrows()[kept.front()].polarity;
      bool uniform = std::all_of(kept.begin(), kept.end(), [&](int a) { return g.arrows()[a].polarity == s; });
      if (uniform) l = s == Polarity::Positive ? PairLabel::VPlus : PairLabel::VMinus;
    }
  }
  return tr;
}

LabelMap memo_labels(const Diagram& g) { return memo_trace(g).final; }

std::vector<int> signposts(const Diagram& g, NodeId x, NodeId y) {
  check_node(g, x);
  check_node(g, y);
  Verdict v = conclude(g, x, y, Mode::OffPathSplit);
  if (v == Verdict::Undefined)
    throw Error(ErrorKind::NoValidPath, g.name(x) + " to " + g.name(y));
  ValidSet vs = valid_paths(g, Mode::OffPathSplit);
  std::vector<char> reached(g.size(), 0);
  reached[x] = 1;
  std::set<int> on_route;
  for (const Path& p : vs.from(x)) {
    if (g.sign(p) == Polarity::Positive) reached[g.endpoint(p)] = 1;
    if (g.endpoint(p) == y) on_route.insert(p.arrows.begin(), p.arrows.end());
  }
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(g.arrows().size()); ++a)
    if (reached[g.arrows()[a].source] && !on_route.count(a)) out.push_back(a);
  std::sort(out.begin(), out.end(), [&](int a, int b) { return g.arrow_label(a) < g.arrow_label(b); });
  return out;
}

}  // namespace nmr
