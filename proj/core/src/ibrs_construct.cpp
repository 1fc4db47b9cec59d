#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "nmr/error.hpp"
#include "nmr/ibrs.hpp"
#include "selection.hpp"

namespace nmr {

namespace {

using detail::ensure;
using detail::range_of;
using detail::require;
using detail::selection_token;
using detail::selections;

struct Ids {
  int a = 0, b = 0, c = 0;
  std::string next(int level) {
    if (level == 1) return "A" + std::to_string(++a);
    if (level == 2) return "B" + std::to_string(++b);
    return "C" + std::to_string(++c);
  }
};

void check_pair(const AttackPair& p) {
  const auto& eta = p.eta;
  const auto& rho = p.rho;
  if (eta.universe != rho.universe || eta.domain != rho.domain)
    throw Error(ErrorKind::InvalidArgument, "eta and rho need the same universe and domain");
  for (std::size_t i = 0; i < eta.domain.size(); ++i) {
    Set x = eta.domain[i];
    if (!subset(rho.mu[i], eta.mu[i]))
      throw PreconditionFailed("rhoSubEta", "rho(" + eta.fmt(x) + ") = " + eta.fmt(rho.mu[i]) +
                                                " is not a subset of eta(" + eta.fmt(x) + ") = " + eta.fmt(eta.mu[i]));
    if (x == 0 && rho.mu[i] != eta.mu[i])
      throw PreconditionFailed("rhoEmpty", "rho({}) = " + eta.fmt(rho.mu[i]) + " differs from eta({}) = " +
                                               eta.fmt(eta.mu[i]));
  }
}

}  // namespace

GenStructure represent_attacking_level2(const AttackPair& p) {
  check_pair(p);
  const ChoiceFunction& eta = p.eta;
  const ChoiceFunction& rho = p.rho;
  const int n = eta.n();
  auto killed = [&](int x, std::size_t i) { return has(eta.mu[i], x) && !has(rho.mu[i], x); };

  GenStructure s;
  s.universe = eta.universe;
  struct Pending {
    int node, x;
    Set ran;
    Set guard;  // 0 for the * copies
    bool star;
  };
  std::vector<Pending> pending;
  std::vector<int> canon(n, -1);
  for (int x = 0; x < n; ++x) {
    std::vector<Set> ys;
    for (std::size_t i = 0; i < eta.domain.size(); ++i)
      if (killed(x, i)) ys.push_back(eta.domain[i]);
    for (const auto& sel : selections(ys)) {
      std::string base = selection_token(eta, "f", ys, sel);
      Set ran = range_of(sel);
      int star = s.add_node(x, base + "|*");
      if (canon[x] < 0) canon[x] = star;
      pending.push_back({star, x, ran, 0, true});
      for (std::size_t i = 0; i < eta.domain.size(); ++i) {
        Set X = eta.domain[i];
        if (!has(rho.mu[i], x)) continue;
        bool below = false;
        for (std::size_t j = 0; j < eta.domain.size() && !below; ++j)
          below = subset(eta.domain[j], X) && killed(x, j);
        if (!below) continue;
        bool hits = true;
        for (std::size_t j = 0; j < eta.domain.size() && hits; ++j)
          if (subset(X, eta.domain[j]) && killed(x, j)) hits = ((ran & eta.domain[j]) & ~X) != 0;
        if (!hits) continue;
        pending.push_back({s.add_node(x, base + "|" + eta.fmt(X)), x, ran, X, false});
      }
    }
  }
  Ids ids;
  for (const auto& c : pending)
    for (int x2 : members(c.ran)) {
      if (c.star || !has(c.guard, x2)) {
        s.add_arrow(ids.next(1), canon[x2], true, c.node);
        continue;
      }
      for (int x3 : members(c.guard)) {
        int a = s.add_arrow(ids.next(1), canon[x2], true, c.node);
        s.add_arrow(ids.next(2), canon[x3], false, a);
      }
    }
  s.finalize();
  ensure(verify_attacking(s, p), "a representation of the pair");
  return s;
}

GenStructure represent_level3_smooth(const ChoiceFunction& f) {
  require(f, "muSub");
  require(f, "muSubSup");
  const int n = f.n();
  const auto& dom = f.domain;
  // ∅ ⊑ X forces every element of X to have no copies at all
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (f.mu[i] != 0) continue;
    for (std::size_t j = 0; j < dom.size(); ++j)
      if (Set lost = dom[i] & f.mu[j])
        throw PreconditionFailed("muEmptyIsolated", "mu(" + f.fmt(dom[i]) + ") = {} but " +
                                                        f.fmt(lost) + " lies in mu(" + f.fmt(dom[j]) + ")");
  }

  GenStructure s;
  s.universe = f.universe;
  std::vector<int> canon(n, -1);
  std::vector<std::pair<int, Set>> copies;  // node, range of its selection
  for (int x = 0; x < n; ++x) {
    std::vector<Set> ys, mus;
    for (std::size_t i = 0; i < dom.size(); ++i)
      if (has(dom[i], x) && !has(f.mu[i], x)) {
        ys.push_back(dom[i]);
        mus.push_back(f.mu[i]);
      }
    for (const auto& sel : selections(mus)) {
      int node = s.add_node(x, selection_token(f, "g", ys, sel));
      if (canon[x] < 0) canon[x] = node;
      copies.emplace_back(node, range_of(sel));
    }
  }

  Ids ids;
  for (auto [node, ran] : copies) {
    int x = s.nodes[node].element;
    for (int y : members(ran)) {
      if (canon[y] < 0) continue;
      std::vector<std::size_t> O, D;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        if (has(dom[i], x) && !has(f.mu[i], x) && has(f.mu[i], y)) O.push_back(i);
        if (has(f.mu[i], x) && has(dom[i], y)) D.push_back(i);
      }
      if (O.empty() || D.empty()) {
        s.add_arrow(ids.next(1), canon[y], true, node);
        continue;
      }
      std::vector<Set> dmu, omu;
      for (auto i : D) dmu.push_back(f.mu[i]);
      for (auto i : O) omu.push_back(f.mu[i]);
      auto gsel = selections(omu);
      // attack pattern of one copy <α,F>: (origin of β, origins of its γ's); copies
      // with equal patterns are interchangeable, so only one is kept
      std::set<std::set<std::pair<int, Set>>> seen;
      for (const auto& F : selections(dmu)) {
        std::set<std::pair<int, Set>> pattern;
        for (std::size_t r = 0; r < D.size(); ++r) {
          Set xr = dom[D[r]];
          int fr = F[r];
          for (const auto& g : gsel) {
            Set gam = 0;
            for (std::size_t k = 0; k < O.size(); ++k) {
              Set ys = dom[O[k]];
              if (!subset(f.mu[O[k]], xr) && has(ys, fr) && canon[g[k]] >= 0) gam |= bit(g[k]);
            }
            pattern.emplace(fr, gam);
          }
        }
        if (!seen.insert(pattern).second) continue;
        int a = s.add_arrow(ids.next(1), canon[y], true, node);
        for (auto [fr, gam] : pattern) {
          if (canon[fr] < 0) continue;
          int b = s.add_arrow(ids.next(2), canon[fr], false, a);
          for (int z : members(gam)) s.add_arrow(ids.next(3), canon[z], false, b);
        }
      }
    }
  }
  s.finalize();
  ensure(verify_higher(s, f), "a representation");
  ensure(essentially_smooth(s, f.domain), "essentially smooth");
  return s;
}

}  // namespace nmr
