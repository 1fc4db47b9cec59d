#include "nmr/ibrs.hpp"

#include <algorithm>
#include <functional>

#include "nmr/error.hpp"

namespace nmr {

int GenStructure::add_node(int element, std::string index) {
  nodes.push_back(CopyNode{element, std::move(index)});
  into.emplace_back();
  return static_cast<int>(nodes.size()) - 1;
}

int GenStructure::add_arrow(std::string id, int origin, bool to_node, int target) {
  HigherArrow a;
  a.id = std::move(id);
  a.origin = origin;
  a.to_node = to_node;
  a.target = target;
  arrows.push_back(std::move(a));
  attackers.emplace_back();
  return static_cast<int>(arrows.size()) - 1;
}

int GenStructure::arrow_index(const std::string& id) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].id == id) return static_cast<int>(i);
  return -1;
}

int GenStructure::node_index(int element, const std::string& index) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].element == element && nodes[i].index == index) return static_cast<int>(i);
  return -1;
}

std::string GenStructure::node_label(int node) const {
  return universe[nodes[node].element] + "." + nodes[node].index;
}

void GenStructure::finalize() {
  const int na = static_cast<int>(arrows.size());
  const int nn = static_cast<int>(nodes.size());
  attackers.assign(na, {});
  into.assign(nn, {});
  {
    std::vector<std::pair<CopyNode, int>> seen;
    for (int i = 0; i < nn; ++i) {
      if (nodes[i].element < 0 || nodes[i].element >= static_cast<int>(universe.size()))
        throw Error(ErrorKind::UnknownNode, "copy of an unknown element");
      seen.emplace_back(nodes[i], i);
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i)
      if (seen[i].first == seen[i - 1].first)
        throw Error(ErrorKind::Duplicate, "duplicate copy " + node_label(seen[i].second));
  }
  std::vector<std::string> ids;
  for (const auto& a : arrows) ids.push_back(a.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw Error(ErrorKind::Duplicate, "duplicate arrow id");
  for (int i = 0; i < na; ++i) {
    auto& a = arrows[i];
    if (a.origin < 0 || a.origin >= nn) throw Error(ErrorKind::UnknownNode, "arrow " + a.id + " has an unknown origin");
    if (a.to_node) {
      if (a.target < 0 || a.target >= nn) throw Error(ErrorKind::UnknownNode, "arrow " + a.id + " has an unknown target");
      into[a.target].push_back(i);
    } else {
      if (a.target < 0 || a.target >= na) throw Error(ErrorKind::UnknownNode, "arrow " + a.id + " targets an unknown arrow");
      attackers[a.target].push_back(i);
    }
    a.level = 0;
  }
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(na, 0);
  std::function<void(int)> visit = [&](int i) {
    if (state[i] == 2) return;
    if (state[i] == 1) throw Error(ErrorKind::Cycle, "arrow " + arrows[i].id + " lies on an attack cycle");
    state[i] = 1;
    auto& a = arrows[i];
    Set o = bit(nodes[a.origin].element);
    if (a.to_node) {
      a.level = 1;
      a.O = o;
      a.D = bit(nodes[a.target].element);
    } else {
      visit(a.target);
      const auto& b = arrows[a.target];
      a.level = b.level + 1;
      a.O = o | b.O;
      a.D = b.D;
    }
    state[i] = 2;
  };
  level = 0;
  for (int i = 0; i < na; ++i) {
    visit(i);
    level = std::max(level, arrows[i].level);
  }
}

namespace {

enum class Mode { To, Sub };

// Memoised downward induction over arrow levels.
struct Validity {
  const GenStructure& s;
  Set x, y;
  Mode mode;
  std::vector<signed char> memo;

  Validity(const GenStructure& st, Set xs, Set ys, Mode m, int max_level)
      : s(st), x(xs), y(ys), mode(m), memo(st.arrows.size(), -1) {
    if (st.level > max_level)
      throw Error(ErrorKind::LevelOverflow, "structure has level " + std::to_string(st.level) + ", limit is " +
                                                std::to_string(max_level));
  }

  bool in_range(int i) const {
    const auto& a = s.arrows[i];
    if (mode == Mode::To) return subset(a.O, x) && subset(a.D, y);
    return has(x, s.nodes[a.origin].element) && subset(a.O, y) && subset(a.D, y);
  }

  // attackers are counted when their origin lies in this set
  Set attack_zone() const { return mode == Mode::To ? x : y; }

  bool valid(int i) {
    if (memo[i] >= 0) return memo[i];
    bool ok = in_range(i);
    if (ok) {
      for (int b : s.attackers[i]) {
        if (!has(attack_zone(), s.nodes[s.arrows[b].origin].element)) continue;
        bool countered = false;
        for (int g : s.attackers[b])
          if (valid(g)) {
            countered = true;
            break;
          }
        if (!countered) {
          ok = false;
          break;
        }
      }
    }
    memo[i] = ok;
    return ok;
  }

  std::vector<std::string> all() {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.arrows.size(); ++i)
      if (valid(static_cast<int>(i))) out.push_back(s.arrows[i].id);
    return out;
  }
};

// Nodes whose element lies in x with no valid arrow into them.
Set unattacked(const GenStructure& s, Validity& v, Set x) {
  Set out = 0;
  for (std::size_t n = 0; n < s.nodes.size(); ++n) {
    int e = s.nodes[n].element;
    if (!has(x, e) || has(out, e)) continue;
    bool hit = false;
    for (int a : s.into[n])
      if (v.valid(a)) {
        hit = true;
        break;
      }
    if (!hit) out |= bit(e);
  }
  return out;
}

std::string fmt(const GenStructure& s, Set x) { return format_set(x, s.universe); }

CheckResult fail(std::vector<Set> sets, std::string text) {
  CheckResult r;
  r.holds = false;
  r.witness = Witness{std::move(sets), {}};
  r.text = std::move(text);
  return r;
}

}  // namespace

std::vector<std::string> valid_arrows(const GenStructure& s, Set x, Set y, int max_level) {
  return Validity(s, x, y, Mode::To, max_level).all();
}

std::vector<std::string> valid_arrows_sub(const GenStructure& s, Set x, Set y, int max_level) {
  if (!subset(x, y)) throw Error(ErrorKind::InvalidArgument, "X => Y validity needs X ⊆ Y");
  return Validity(s, x, y, Mode::Sub, max_level).all();
}

Set higher_mu(const GenStructure& s, Set x) {
  Validity v(s, x, x, Mode::To, kDefaultMaxLevel);
  return unattacked(s, v, x);
}

Set attacked_rho(const GenStructure& s, Set x, Set eta_x) {
  Validity v(s, x, eta_x, Mode::To, kDefaultMaxLevel);
  return unattacked(s, v, eta_x);
}

CheckResult check_sqsubseteq(const GenStructure& s, Set x, Set x2) {
  if (!subset(x, x2)) return fail({x, x2}, fmt(s, x) + " is not a subset of " + fmt(s, x2));
  Validity v(s, x, x2, Mode::Sub, kDefaultMaxLevel);
  auto valid_into = [&](const std::vector<int>& list) {
    for (int a : list)
      if (v.valid(a)) return true;
    return false;
  };
  for (std::size_t n = 0; n < s.nodes.size(); ++n) {
    int e = s.nodes[n].element;
    if (!has(x2, e) || has(x, e)) continue;
    if (!valid_into(s.into[n]))
      return fail({x, x2}, "copy " + s.node_label(static_cast<int>(n)) + " has no valid " + fmt(s, x) + " => " +
                               fmt(s, x2) + " arrow into it");
  }
  for (int e : members(x)) {
    bool some = false;
    for (std::size_t n = 0; n < s.nodes.size() && !some; ++n) {
      if (s.nodes[n].element != e) continue;
      bool all = true;
      for (int a : s.into[n]) {
        if (!has(x2, s.nodes[s.arrows[a].origin].element)) continue;
        if (!valid_into(s.attackers[a])) {
          all = false;
          break;
        }
      }
      some = all;
    }
    if (!some)
      return fail({x, x2}, "every copy of " + s.universe[e] + " keeps an unanswered attack from " + fmt(s, x2));
  }
  return {};
}

CheckResult totally_smooth(const GenStructure& s, const std::vector<Set>& domain) {
  for (Set x : domain) {
    Validity v(s, x, x, Mode::To, kDefaultMaxLevel);
    Set m = unattacked(s, v, x);
    for (std::size_t i = 0; i < s.arrows.size(); ++i) {
      const auto& a = s.arrows[i];
      if (!subset(a.O | a.D, x)) continue;
      const auto& rivals = a.to_node ? s.into[a.target] : s.attackers[a.target];
      bool minimal = false, minimal_valid = false;
      for (int r : rivals) {
        if (!has(m, s.nodes[s.arrows[r].origin].element)) continue;
        minimal = true;
        if (v.valid(r)) minimal_valid = true;
      }
      if (!minimal)
        return fail({x}, "in " + fmt(s, x) + " arrow " + a.id + " has no parallel arrow from mu = " + fmt(s, m));
      if (v.valid(static_cast<int>(i)) && !minimal_valid)
        return fail({x}, "in " + fmt(s, x) + " valid arrow " + a.id + " has no valid parallel arrow from mu = " +
                             fmt(s, m));
    }
  }
  return {};
}

CheckResult essentially_smooth(const GenStructure& s, const std::vector<Set>& domain) {
  for (Set x : domain) {
    Set m = higher_mu(s, x);
    CheckResult r = check_sqsubseteq(s, m, x);
    if (!r.holds) return fail({x, m}, "mu(" + fmt(s, x) + ") = " + fmt(s, m) + " is not below it: " + r.text);
  }
  return {};
}

CheckResult verify_higher(const GenStructure& s, const ChoiceFunction& f) {
  for (std::size_t i = 0; i < f.domain.size(); ++i) {
    Set got = higher_mu(s, f.domain[i]);
    if (got != f.mu[i])
      return fail({f.domain[i], got},
                  "mu(" + f.fmt(f.domain[i]) + ") = " + f.fmt(got) + ", expected " + f.fmt(f.mu[i]));
  }
  return {};
}

CheckResult verify_attacking(const GenStructure& s, const AttackPair& a) {
  for (std::size_t i = 0; i < a.eta.domain.size(); ++i) {
    Set x = a.eta.domain[i];
    Set got = attacked_rho(s, x, a.eta.mu[i]);
    Set want = a.rho.at(x);
    if (got != want)
      return fail({x, got}, "rho(" + a.eta.fmt(x) + ") = " + a.eta.fmt(got) + ", expected " + a.eta.fmt(want));
  }
  return {};
}

GenStructure from_pref(const PrefStructure& p) {
  GenStructure g;
  g.universe = p.universe;
  for (const auto& n : p.nodes) g.add_node(n.element, n.index);
  int k = 0;
  for (auto [lo, up] : p.rel) g.add_arrow("A" + std::to_string(++k), lo, true, up);
  g.finalize();
  return g;
}

}  // namespace nmr

namespace nmr {

Level2Search search_level2(const ChoiceFunction& f, bool totally) {
  const int n = f.n();
  if (n > 3) throw Error(ErrorKind::BoundExceeded, "level-2 search supports at most 3 elements");
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) pairs.emplace_back(a, b);
  Level2Search out;
  const std::uint32_t l1_total = 1u << pairs.size();
  for (std::uint32_t m1 = 0; m1 < l1_total; ++m1) {
    std::vector<std::pair<int, int>> l1;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (m1 >> i & 1u) l1.push_back(pairs[i]);
    const std::size_t l2_count = l1.size() * static_cast<std::size_t>(n);
    const std::uint64_t l2_total = std::uint64_t{1} << l2_count;
    for (std::uint64_t m2 = 0; m2 < l2_total; ++m2) {
      GenStructure s;
      s.universe = f.universe;
      for (int e = 0; e < n; ++e) s.add_node(e, "0");
      for (std::size_t i = 0; i < l1.size(); ++i)
        s.add_arrow("a" + std::to_string(i), l1[i].first, true, l1[i].second);
      for (std::size_t j = 0; j < l2_count; ++j)
        if (m2 >> j & 1u)
          s.add_arrow("b" + std::to_string(j), static_cast<int>(j % n), false, static_cast<int>(j / n));
      s.finalize();
      ++out.examined;
      if (!verify_higher(s, f).holds) continue;
      if (!(totally ? totally_smooth(s, f.domain) : essentially_smooth(s, f.domain)).holds) continue;
      out.found = std::move(s);
      return out;
    }
  }
  return out;
}

}  // namespace nmr
