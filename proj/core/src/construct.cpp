#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "nmr/error.hpp"
#include "nmr/prefstruct.hpp"
#include "selection.hpp"

namespace nmr {

namespace {

using detail::ensure;
using detail::range_of;
using detail::ranges;
using detail::require;
using detail::selection_token;
using detail::selections;

void require_unions(const ChoiceFunction& f) {
  for (Set a : f.domain)
    for (Set b : f.domain)
      if (!f.in_domain(a | b))
        throw Error(ErrorKind::DomainClosure, "domain lacks the union " + f.fmt(a | b));
}

void require_singletons(const ChoiceFunction& f) {
  for (int i = 0; i < f.n(); ++i)
    if (!f.in_domain(bit(i))) throw Error(ErrorKind::DomainClosure, "domain lacks the singleton " + f.fmt(bit(i)));
}

// 𝒴_x in domain order.
std::vector<Set> killers(const ChoiceFunction& f, int x) {
  std::vector<Set> out;
  for (std::size_t i = 0; i < f.domain.size(); ++i)
    if (has(f.domain[i], x) && !has(f.mu[i], x)) out.push_back(f.domain[i]);
  return out;
}

// Construction over selection functions; `worse` adds the rank layer of the
// 𝒜-ranked variant.
PrefStructure selection_structure(const ChoiceFunction& f, const RankedPartition* worse) {
  PrefStructure s;
  s.universe = f.universe;
  std::vector<Set> ran;
  for (int x = 0; x < f.n(); ++x) {
    auto ys = killers(f, x);
    for (const auto& sel : selections(ys)) {
      s.add_copy(x, selection_token(f, "f", ys, sel));
      ran.push_back(range_of(sel));
    }
  }
  for (std::size_t a = 0; a < s.nodes.size(); ++a)
    for (std::size_t b = 0; b < s.nodes.size(); ++b) {
      int xa = s.nodes[a].element, xb = s.nodes[b].element;
      bool lower = has(ran[b], xa) || (worse && worse->rank(xa) < worse->rank(xb));
      if (lower) s.add_pair(static_cast<int>(a), static_cast<int>(b));
    }
  s.finalize();
  return s;
}

// Copies ⟨x,S⟩ where S is the union of an x-admissible sequence; the relation
// depends on S only, so one copy per achievable union is exact.
PrefStructure admissible_structure(const ChoiceFunction& f) {
  PrefStructure s;
  s.universe = f.universe;
  Set k = 0;
  for (Set m : f.mu) k |= m;
  std::vector<Set> cover;
  for (int x = 0; x < f.n(); ++x) {
    if (!has(k, x)) continue;
    std::vector<Set> w;
    for (Set y : killers(f, x)) w.push_back(f.at(y));
    auto step = [&](Set r) {
      std::vector<Set> factors;
      for (std::size_t i = 0; i < f.domain.size(); ++i)
        if (has(f.mu[i], x) && (r & f.domain[i])) factors.push_back(f.mu[i]);
      return ranges(factors);
    };
    std::map<std::pair<Set, Set>, std::vector<std::pair<Set, Set>>> graph;
    std::vector<std::pair<Set, Set>> todo;
    for (Set r0 : ranges(w)) todo.emplace_back(r0, r0);
    while (!todo.empty()) {
      auto st = todo.back();
      todo.pop_back();
      if (graph.count(st)) continue;
      auto& succ = graph[st];
      for (Set r : step(st.first)) {
        std::pair<Set, Set> nx{r, st.second | r};
        succ.push_back(nx);
        if (!graph.count(nx)) todo.push_back(nx);
      }
    }
    // greatest fixpoint: states with an infinite continuation inside their union
    std::set<std::pair<Set, Set>> alive;
    for (const auto& [st, succ] : graph) alive.insert(st);
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = alive.begin(); it != alive.end();) {
        const auto& succ = graph[*it];
        bool ok = std::any_of(succ.begin(), succ.end(),
                              [&](const auto& nx) { return nx.second == it->second && alive.count(nx); });
        if (ok) {
          ++it;
        } else {
          it = alive.erase(it);
          changed = true;
        }
      }
    }
    std::set<Set, LexLess> unions;
    for (const auto& st : alive) unions.insert(st.second);
    for (Set u : unions) {
      s.add_copy(x, "s" + f.fmt(u));
      cover.push_back(u);
    }
  }
  // elements outside K: one top copy unless some set containing them has empty choice
  std::vector<char> top(s.nodes.size(), 0);
  for (int x = 0; x < f.n(); ++x) {
    if (has(k, x)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < f.domain.size(); ++i)
      if (has(f.domain[i], x) && f.mu[i] == 0) ok = false;
    if (!ok) continue;
    s.add_copy(x, "top");
    cover.push_back(k);
    top.push_back(1);
  }
  for (std::size_t a = 0; a < s.nodes.size(); ++a)
    for (std::size_t b = 0; b < s.nodes.size(); ++b)
      if (!top[a] && has(cover[b], s.nodes[a].element)) s.add_pair(static_cast<int>(a), static_cast<int>(b));
  s.finalize();
  return s;
}

// Trees of the smooth transitive construction, interned.
class TreeBuilder {
 public:
  explicit TreeBuilder(const ChoiceFunction& f) : f_(f) {}

  struct Node {
    Set u;
    int x;
    std::vector<int> children;
  };
  std::vector<Node> nodes;

  const std::vector<int>& mu_trees(Set u, int x) {
    auto key = std::make_pair(u, x);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Set h = hull(f_, u, std::nullopt).fixpoint();
    std::vector<std::vector<int>> options;
    for (Set y : f_.domain) {
      if (!has(y, x) || subset(y, h)) continue;
      Set uy = u | y;
      std::vector<int> opts;
      for (int e : members(f_.at(uy) & ~h)) {
        const auto& sub = mu_trees(uy, e);
        opts.insert(opts.end(), sub.begin(), sub.end());
      }
      options.push_back(std::move(opts));
    }
    std::vector<int> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == options.size()) {
        out.push_back(intern(u, x, pick));
        return;
      }
      for (int t : options[i]) {
        pick.push_back(t);
        self(self, i + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
    return memo_[key] = std::move(out);
  }

  int intern(Set u, int x, std::vector<int> children) {
    auto key = std::make_tuple(u, x, children);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    if (nodes.size() >= kMaxTrees)
      throw Error(ErrorKind::BoundExceeded, "smooth transitive construction needs more than " +
                                                std::to_string(kMaxTrees) + " trees");
    nodes.push_back({u, x, std::move(children)});
    int id = static_cast<int>(nodes.size()) - 1;
    ids_.emplace(key, id);
    return id;
  }

  std::string token(int t) const {
    const Node& n = nodes[t];
    std::string s = f_.fmt(n.u) + f_.universe[n.x];
    if (n.children.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) s += (i ? "," : "") + token(n.children[i]);
    return s + ")";
  }

 private:
  static constexpr std::size_t kMaxTrees = 200000;
  const ChoiceFunction& f_;
  std::map<std::pair<Set, int>, std::vector<int>> memo_;
  std::map<std::tuple<Set, int, std::vector<int>>, int> ids_;
};

}  // namespace

PrefStructure represent_general(const ChoiceFunction& f) {
  require(f, "muSub");
  require(f, "muPR");
  PrefStructure s = selection_structure(f, nullptr);
  ensure(verify(s, f), "a representation");
  return s;
}

// Only the trees tf_x and tc_x are materialized; they suffice for the
// representation and the resulting relation is already transitive.
PrefStructure represent_transitive(const ChoiceFunction& f) {
  require(f, "muSub");
  require(f, "muPR");
  PrefStructure s;
  s.universe = f.universe;
  std::vector<int> constant(f.n(), -1);
  for (int x = 0; x < f.n(); ++x) {
    if (killers(f, x).empty()) constant[x] = s.add_copy(x, "leaf");
    else constant[x] = s.add_copy(x, "tc");
  }
  for (int x = 0; x < f.n(); ++x) {
    auto ys = killers(f, x);
    if (ys.empty()) continue;
    s.add_pair(constant[x], constant[x]);
    for (const auto& sel : selections(ys)) {
      int c = s.add_copy(x, selection_token(f, "t", ys, sel));
      for (int y : members(range_of(sel))) s.add_pair(constant[y], c);
    }
  }
  s.finalize();
  ensure(is_transitive(s), "transitive");
  ensure(verify(s, f), "a representation");
  return s;
}

PrefStructure represent_smooth(const ChoiceFunction& f) {
  require(f, "muSub");
  require(f, "HUu");
  PrefStructure s = admissible_structure(f);
  ensure(is_smooth(s, f.domain), "smooth");
  ensure(verify(s, f), "a representation");
  return s;
}

PrefStructure represent_smooth_transitive(const ChoiceFunction& f) {
  require_unions(f);
  require(f, "muSub");
  require(f, "muPR");
  require(f, "muCUM");
  TreeBuilder tb(f);
  PrefStructure s;
  s.universe = f.universe;
  std::vector<std::pair<int, int>> copies;  // (element, tree)
  for (Set u : f.domain)
    for (int x : members(f.at(u)))
      for (int t : tb.mu_trees(u, x)) copies.emplace_back(x, t);
  std::sort(copies.begin(), copies.end());
  copies.erase(std::unique(copies.begin(), copies.end()), copies.end());
  // one tree for the non-minimal case per element
  for (int x = 0; x < f.n(); ++x) {
    std::vector<int> children;
    bool ok = true;
    for (Set u : f.domain) {
      if (!has(u, x)) continue;
      Set m = f.at(u);
      if (!m) {
        ok = false;
        break;
      }
      int y = std::countr_zero(m);
      children.push_back(tb.mu_trees(u, y).front());
    }
    if (ok) copies.emplace_back(x, tb.intern(0, x, children));
  }
  std::map<int, int> node_of;  // tree -> copy id
  for (auto [x, t] : copies) node_of[t] = s.add_copy(x, "T" + tb.token(t));
  // ⟨x,t⟩ ≻ ⟨y,t'⟩ iff t' is a proper subtree of t
  std::map<int, std::set<int>> desc;
  auto descendants = [&](auto&& self, int t) -> const std::set<int>& {
    if (auto it = desc.find(t); it != desc.end()) return it->second;
    std::set<int> d;
    for (int c : tb.nodes[t].children) {
      d.insert(c);
      const auto& sub = self(self, c);
      d.insert(sub.begin(), sub.end());
    }
    return desc[t] = std::move(d);
  };
  for (auto [x, t] : copies)
    for (int d : descendants(descendants, t)) s.add_pair(node_of.at(d), node_of.at(t));
  s.finalize();
  ensure(is_transitive(s), "transitive");
  ensure(is_smooth(s, f.domain), "smooth");
  ensure(verify(s, f), "a representation");
  return s;
}

PrefStructure represent_ranked(const ChoiceFunction& f) {
  require_singletons(f);
  require_unions(f);
  require(f, "muSub");
  require(f, "muEmptyFin");
  require(f, "muEq");
  require(f, "muIn");
  int n = f.n();
  // ≈ classes by union-find, then strict edges between classes
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Set m : f.mu) {
    auto ms = members(m);
    for (std::size_t i = 1; i < ms.size(); ++i) parent[root(ms[i])] = root(ms[0]);
  }
  std::set<std::pair<int, int>> strict;
  std::map<std::pair<int, int>, std::pair<int, int>> because;  // class edge -> element edge
  for (std::size_t i = 0; i < f.domain.size(); ++i)
    for (int x : members(f.mu[i]))
      for (int y : members(f.domain[i] & ~f.mu[i])) {
        int a = root(x), b = root(y);
        if (a == b)
          throw Error(ErrorKind::CycleInQualityRelation,
                      f.universe[x] + " is both equivalent to and better than " + f.universe[y]);
        if (strict.emplace(a, b).second) because[{a, b}] = {x, y};
      }
  // Kahn with element-order tie-breaking
  std::vector<int> classes;
  for (int x = 0; x < n; ++x)
    if (root(x) == x) classes.push_back(x);
  std::map<int, int> indeg;
  for (int c : classes) indeg[c] = 0;
  for (auto [a, b] : strict) ++indeg[b];
  std::set<int> ready;
  for (int c : classes)
    if (indeg[c] == 0) ready.insert(c);
  std::map<int, int> rank;
  int next = 0;
  while (!ready.empty()) {
    int c = *ready.begin();
    ready.erase(ready.begin());
    rank[c] = next++;
    for (auto [a, b] : strict)
      if (a == c && --indeg[b] == 0) ready.insert(b);
  }
  if (static_cast<int>(rank.size()) != static_cast<int>(classes.size())) {
    std::string cyc;
    for (auto [a, b] : strict)
      if (!rank.count(a) && !rank.count(b)) {
        auto [x, y] = because[{a, b}];
        cyc += (cyc.empty() ? "" : ", ") + f.universe[x] + " < " + f.universe[y];
      }
    throw Error(ErrorKind::CycleInQualityRelation, "quality relation has a cycle through " + cyc);
  }
  PrefStructure s;
  s.universe = f.universe;
  for (int x = 0; x < n; ++x) s.add_copy(x, "r" + std::to_string(rank[root(x)]));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (rank[root(x)] < rank[root(y)]) s.add_pair(x, y);
  s.finalize();
  ensure(is_ranked(s), "ranked");
  ensure(verify(s, f), "a representation");
  return s;
}

PrefStructure represent_A_ranked(const ChoiceFunction& f, const RankedPartition& p, bool smooth) {
  Property pa{Prop::A, 0, {}};
  for (Set b : p.blocks) {
    std::vector<std::string> names;
    for (int e : members(b)) names.push_back(f.universe[e]);
    pa.blocks.push_back(names);
  }
  for (int x = 0; x < f.n(); ++x)
    if (p.rank(x) < 0) throw Error(ErrorKind::InvalidArgument, "partition misses " + f.universe[x]);
  if (smooth) require_unions(f);
  require(f, "muSub");
  require(f, "muPR");
  if (smooth) require(f, "muCUM");
  require(f, pa);
  PrefStructure s;
  if (!smooth) {
    s = selection_structure(f, &p);
  } else {
    s = admissible_structure(f);
    for (std::size_t a = 0; a < s.nodes.size(); ++a)
      for (std::size_t b = 0; b < s.nodes.size(); ++b)
        if (p.rank(s.nodes[a].element) < p.rank(s.nodes[b].element))
          s.add_pair(static_cast<int>(a), static_cast<int>(b));
    s.finalize();
    ensure(is_smooth(s, f.domain), "smooth");
  }
  ensure(is_A_ranked(s, p), "A-ranked");
  ensure(verify(s, f), "a representation");
  return s;
}

}  // namespace nmr
