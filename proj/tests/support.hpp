#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nmr/blocking.hpp"
#include "nmr/choicefn.hpp"
#include "nmr/error.hpp"
#include "nmr/formats.hpp"
#include "nmr/ibrs.hpp"
#include "nmr/inference.hpp"
#include "nmr/netcore.hpp"
#include "nmr/prefstruct.hpp"
#include "nmr/reactive.hpp"
#include "nmr/search.hpp"
#include "nmr/sizesys.hpp"

namespace fx {

using namespace nmr;

inline std::string read_data(const std::string& rel) {
  std::ifstream in(std::string(NMR_TEST_DATA) + "/" + rel, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + rel);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RawArrow pos(std::string a, std::string b) { return {std::move(a), std::move(b), Polarity::Positive}; }
inline RawArrow neg(std::string a, std::string b) { return {std::move(a), std::move(b), Polarity::Negative}; }

inline Diagram tweety() {
  return diagram_from_arrows({pos("a", "b"), pos("a", "c"), pos("c", "b"), pos("b", "d"), neg("c", "d")});
}
inline Diagram nixon() { return diagram_from_arrows({pos("a", "b"), pos("a", "c"), pos("b", "d"), neg("c", "d")}); }
inline Diagram updown() {
  return diagram_from_arrows({pos("z", "u"), neg("z", "x"), pos("u", "v"), pos("u", "x"), pos("x", "v"),
                              neg("x", "y"), pos("v", "y")});
}
inline Diagram split_total() {
  return diagram_from_arrows({pos("u", "x"), pos("u", "v"), pos("v", "y"), neg("x", "y"), neg("u", "w"),
                              pos("x", "w"), pos("w", "v")});
}
inline Diagram inheruniv() {
  return diagram_from_arrows({pos("x", "a"), pos("x", "c"), pos("a", "y"), pos("c", "y"), neg("b", "y"),
                              neg("f", "a"), pos("d", "a"), pos("b", "f"), pos("b", "d"), neg("g", "b"),
                              pos("e", "b"), pos("c", "g"), pos("c", "e"), pos("e", "g")});
}
inline Diagram multiple() {
  return diagram_from_arrows({pos("X", "Y"), pos("X", "Y′"), pos("Y", "Z"), neg("Y′", "Z"), pos("Y′", "Y"),
                              pos("U", "X"), pos("Y″", "Z")});
}

inline std::vector<std::pair<std::string, Diagram>> named() {
  return {{"tweety", tweety()},       {"nixon", nixon()},         {"updown", updown()},
          {"split_total", split_total()}, {"inheruniv", inheruniv()}, {"multiple", multiple()}};
}

inline int arrow(const Diagram& g, const std::string& s, const std::string& t) {
  auto a = g.arrow_between(g.id(s), g.id(t));
  if (!a) throw std::runtime_error("no arrow " + s + " " + t);
  return *a;
}

// Random DAG: nodes n0..n(k-1) in a shuffled topological order.
inline Diagram random_dag(std::mt19937_64& rng, int max_nodes, int max_arrows) {
  int n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  int m = std::uniform_int_distribution<int>(1, std::min<int>(max_arrows, static_cast<int>(pairs.size())))(rng);
  std::vector<RawArrow> arrows;
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
  for (int k = 0; k < m; ++k) {
    auto [i, j] = pairs[k];
    bool negative = std::uniform_int_distribution<int>(0, 3)(rng) == 0;
    arrows.push_back({nodes[order[i]], nodes[order[j]], negative ? Polarity::Negative : Polarity::Positive});
  }
  return diagram_from_arrows(arrows, nodes);
}

inline std::vector<std::string> letters(int n) {
  std::vector<std::string> u;
  for (int i = 0; i < n; ++i) u.push_back(std::string(1, static_cast<char>('a' + i)));
  return u;
}

// The code-th function P(U) -> P(U) with mu(X) ⊆ X when `sub`, enumerated
// by mixed radix over the domain.
inline ChoiceFunction function_from_code(int n, std::uint64_t code, bool sub = true) {
  std::vector<std::pair<Set, Set>> e;
  for (Set x = 0; x <= full_set(n); ++x) {
    std::uint64_t radix = sub ? (std::uint64_t{1} << card(x)) : (std::uint64_t{1} << n);
    std::uint64_t digit = code % radix;
    code /= radix;
    Set m = 0;
    if (sub) {
      auto ms = members(x);
      for (std::size_t i = 0; i < ms.size(); ++i)
        if (digit >> i & 1u) m |= bit(ms[i]);
    } else {
      m = static_cast<Set>(digit);
    }
    e.emplace_back(x, m);
  }
  return ChoiceFunction::make(letters(n), e);
}

inline std::uint64_t function_count(int n) {
  std::uint64_t c = 1;
  for (Set x = 0; x <= full_set(n); ++x) c <<= card(x);
  return c;
}

inline ChoiceFunction random_sub_function(std::mt19937_64& rng, int n) {
  std::vector<std::pair<Set, Set>> e;
  for (Set x = 0; x <= full_set(n); ++x) e.emplace_back(x, static_cast<Set>(rng()) & x);
  return ChoiceFunction::make(letters(n), e);
}

// mu of a binary relation `below[z]` = elements strictly preferred to z,
// minimisation as in preferential structures with one copy per element.
inline Set relation_mu(const std::vector<Set>& below, Set x) {
  Set out = 0;
  for (int z : members(x))
    if ((below[z] & x) == 0) out |= bit(z);
  return out;
}

inline ChoiceFunction relation_function(const std::vector<std::string>& u, const std::vector<Set>& below,
                                        const std::vector<Set>& domain) {
  std::vector<std::pair<Set, Set>> e;
  for (Set x : domain) e.emplace_back(x, relation_mu(below, x));
  return ChoiceFunction::make(u, e);
}

inline std::vector<Set> intersection_closure(std::vector<Set> gens) {
  std::set<Set> fam(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Set> cur(fam.begin(), fam.end());
    for (Set a : cur)
      for (Set b : cur)
        if (fam.insert(a & b).second) grew = true;
  }
  return {fam.begin(), fam.end()};
}

// Finite instance of the ordinal example separating the Cum-alpha conditions
// (kappa a positive integer): base a,b,c, x0..x(k+1), x'0..x'k; relation
// a<b<c, xi<x(i+1), xi<x'i (not transitive); generators U, Xi (i<k), X'k.
struct CumAlphaInstance {
  ChoiceFunction f;
  Set U = 0;
  Set Xk = 0;  // X'_kappa
};

inline CumAlphaInstance cum_alpha_instance(int kappa) {
  std::vector<std::string> u{"a", "b", "c"};
  for (int i = 0; i <= kappa + 1; ++i) u.push_back("x" + std::to_string(i));
  for (int i = 0; i <= kappa; ++i) u.push_back("x'" + std::to_string(i));
  auto at = [&](const std::string& s) { return static_cast<int>(std::find(u.begin(), u.end(), s) - u.begin()); };
  auto x = [&](int i) { return at("x" + std::to_string(i)); };
  auto xp = [&](int i) { return at("x'" + std::to_string(i)); };
  std::vector<Set> below(u.size(), 0);
  below[at("b")] |= bit(at("a"));
  below[at("c")] |= bit(at("b"));
  for (int i = 0; i <= kappa; ++i) {
    below[x(i + 1)] |= bit(x(i));
    below[xp(i)] |= bit(x(i));
  }
  CumAlphaInstance inst;
  inst.U = bit(at("a")) | bit(at("c")) | bit(x(0));
  std::vector<Set> gens{inst.U};
  for (int i = 0; i < kappa; ++i) gens.push_back(bit(at("c")) | bit(x(i)) | bit(xp(i)) | bit(x(i + 1)));
  inst.Xk = bit(at("a")) | bit(at("b")) | bit(at("c")) | bit(x(kappa)) | bit(xp(kappa)) | bit(x(kappa + 1));
  gens.push_back(inst.Xk);
  inst.f = relation_function(u, below, intersection_closure(gens));
  return inst;
}

inline std::vector<Set> all_nonempty(int n) {
  std::vector<Set> out;
  for (Set x = 1; x <= full_set(n); ++x) out.push_back(x);
  return out;
}


// (Cum) for one net: A ⊆ B ⊆ horizon(A) implies horizon(B) = horizon(A).
inline bool cum_holds(const BlockNet& net) {
  std::uint32_t all = full_set(net.size());
  for (std::uint32_t a = 0; a <= all; ++a) {
    std::uint32_t ha = horizon_mask(net, a);
    std::uint32_t extra = ha & ~a;
    for (std::uint32_t e = extra;; e = (e - 1) & extra) {
      if (horizon_mask(net, a | e) != ha) return false;
      if (e == 0) break;
    }
  }
  return true;
}

// Every net on n nodes n0..n(n-1) with arrows only from lower to higher
// index (3 choices per pair) and at most `cap` arrows.
template <class Fn>
void for_each_net(int n, int cap, Fn fn) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
  std::vector<int> choice(pairs.size(), 0);
  while (true) {
    std::vector<RawArrow> arrows;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (choice[k])
        arrows.push_back({nodes[pairs[k].first], nodes[pairs[k].second],
                          choice[k] == 1 ? Polarity::Positive : Polarity::Negative});
    if (static_cast<int>(arrows.size()) <= cap) fn(diagram_from_arrows(arrows, nodes));
    std::size_t k = 0;
    while (k < choice.size() && choice[k] == 2) choice[k++] = 0;
    if (k == choice.size()) break;
    ++choice[k];
  }
}

// Rows of the basic choice-function implication table as search problems.
struct MuBaseRow {
  std::string label;
  std::string hypotheses;
  std::string conclusions;
  std::string closure;
  bool counterexample;  // a "does not imply" row
};

inline std::vector<MuBaseRow> mu_base_rows() {
  return {
      {"1.1", "muPR,muSub", "muPR'", "cap", false},
      {"2.1", "muPR,muSub", "muOR", "none", false},
      {"3", "muPR", "muCUT", "none", false},
      {"4", "muSub,muSubSup,muCUM,muRatM", "muPR", "cap", true},
      {"5.1", "muCM,muSub", "muResM", "cap", false},
      {"6", "muCM,muCUT", "muCUM", "none", false},
      {"6 converse", "muCUM", "muCM,muCUT", "none", false},
      {"7", "muSub,muSubSup", "muCUM", "none", false},
      {"8", "muSub,muCUM", "muSubSup", "cap", false},
      {"9", "muSub,muCUM", "muSubSup", "none", true},
      {"10", "muRatM,muPR", "muEq", "none", false},
      {"11", "muEq", "muPR,muRatM", "none", false},
      {"12.1", "muEq,muSub", "muEq'", "cap", false},
      {"13", "muSub,muEq", "muCup", "cup", false},
      {"14", "muSub,muEmpty,muEq", "muPar,muCup',muCUM", "cup", false},
      {"15", "muSub,muPar", "muEq", "minus", false},
      {"17", "muCUM,muEq", "muIn", "cup,singletons", false},
      {"18", "muCUM,muEq,muSub", "muPar", "cup", false},
  };
}

inline std::vector<Property> properties(const std::string& csv) {
  std::vector<Property> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(parse_property(tok));
  return out;
}

inline SearchConfig row_config(const MuBaseRow& r) {
  SearchConfig c;
  c.hypotheses = properties(r.hypotheses);
  c.conclusions = properties(r.conclusions);
  c.closure = parse_closure(r.closure);
  c.bound = 3;
  c.exhaustive_max = 3;
  return c;
}

struct SweepStats {
  int built = 0;
  int refused = 0;    // a precondition or domain closure failed
  int truncated = 0;  // BoundExceeded
  std::vector<std::string> failures;
};

inline const char* kKinds[] = {"general", "transitive", "smooth", "smooth_transitive", "ranked", "A_ranked",
                              "A_ranked_smooth"};

// Builds every kind of representation the function admits and checks each
// result with verify plus the kind's structural property.
inline void sweep_function(const ChoiceFunction& f, const std::vector<std::vector<std::string>>& blocks,
                           SweepStats& st) {
  for (const char* kind : kKinds) {
    std::string k = kind;
    try {
      PrefStructure s;
      RankedPartition part;
      if (k == "general") s = represent_general(f);
      if (k == "transitive") s = represent_transitive(f);
      if (k == "smooth") s = represent_smooth(f);
      if (k == "smooth_transitive") s = represent_smooth_transitive(f);
      if (k == "ranked") s = represent_ranked(f);
      if (k.starts_with("A_ranked")) {
        part = make_partition(f, blocks);
        s = represent_A_ranked(f, part, k == "A_ranked_smooth");
      }
      std::vector<CheckResult> checks{verify(s, f)};
      if (k == "transitive" || k == "smooth_transitive") checks.push_back(is_transitive(s));
      if (k == "smooth" || k == "smooth_transitive" || k == "A_ranked_smooth") checks.push_back(is_smooth(s, f.domain));
      if (k == "ranked") checks.push_back(is_ranked(s));
      if (k.starts_with("A_ranked")) checks.push_back(is_A_ranked(s, part));
      bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.holds; });
      if (ok) ++st.built;
      else st.failures.push_back(k + " on\n" + serialize_choice(f));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PreconditionFailed || e.kind() == ErrorKind::DomainClosure ||
          e.kind() == ErrorKind::CycleInQualityRelation)
        ++st.refused;
      else if (e.kind() == ErrorKind::BoundExceeded)
        ++st.truncated;
      else
        st.failures.push_back(k + ": " + e.what() + " on\n" + serialize_choice(f));
    } catch (const std::exception& e) {
      st.failures.push_back(k + ": " + e.what() + " on\n" + serialize_choice(f));
    }
  }
}

inline SweepStats representation_sweep(int samples, std::uint64_t seed) {
  SweepStats st;
  for (std::uint64_t code = 0; code < 256; ++code)
    sweep_function(function_from_code(2, code, false), {{"a"}, {"b"}}, st);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    ChoiceFunction f;
    switch (i % 3) {
      case 0: f = random_sub_function(rng, 3); break;
      case 1: {
        std::vector<Set> below(3, 0);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            if (a != b && std::uniform_int_distribution<int>(0, 2)(rng) == 0) below[a] |= bit(b);
        std::vector<Set> dom;
        for (Set x = 0; x < 8; ++x) dom.push_back(x);
        f = relation_function(letters(3), below, dom);
        break;
      }
      default: {
        std::vector<int> rank(3);
        for (int& r : rank) r = std::uniform_int_distribution<int>(0, 2)(rng);
        std::vector<Set> below(3, 0);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            if (rank[b] < rank[a]) below[a] |= bit(b);
        std::vector<Set> dom;
        for (Set x = 0; x < 8; ++x) dom.push_back(x);
        f = relation_function(letters(3), below, dom);
      }
    }
    sweep_function(f, {{"a", "b"}, {"c"}}, st);
  }
  return st;
}

inline ChoiceFunction level_bigger_2() {
  return parse_choice("universe: x y yp\nmu {x,y,yp} = {y,yp}\nmu {x,y} = {x}\nmu {x,yp} = {x}\n");
}

struct HigherSweep {
  int verified = 0;
  int refused = 0;
  std::map<std::string, int> refused_by;  // precondition token -> count
  int max_arrows = 0;
  std::vector<std::string> failures;
};

inline void level3_one(const ChoiceFunction& f, HigherSweep& st) {
  try {
    GenStructure s = represent_level3_smooth(f);
    CheckResult v = verify_higher(s, f), e = essentially_smooth(s, f.domain);
    if (v.holds && e.holds && s.level <= 3) {
      ++st.verified;
      st.max_arrows = std::max(st.max_arrows, static_cast<int>(s.arrows.size()));
    } else {
      st.failures.push_back(v.text + e.text + " on\n" + serialize_choice(f));
    }
  } catch (const PreconditionFailed& e) {
    ++st.refused;
    ++st.refused_by[e.property()];
  } catch (const std::exception& e) {
    st.failures.push_back(std::string(e.what()) + " on\n" + serialize_choice(f));
  }
}

// Every μ⊆ + μ⊆⊇ function on two elements (domain P(U)) and `samples` such
// functions on three elements.
inline HigherSweep level3_sweep(int samples, std::uint64_t seed) {
  HigherSweep st;
  for (std::uint64_t code = 0; code < function_count(2); ++code) {
    ChoiceFunction f = function_from_code(2, code);
    if (check(f, "muSubSup").holds) level3_one(f, st);
  }
  std::mt19937_64 rng(seed);
  int done = 0;
  while (done < samples) {
    ChoiceFunction f;
    if (rng() % 2 == 0) {
      f = random_sub_function(rng, 3);
    } else {
      std::vector<Set> below(3, 0);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < a; ++b)
          if (rng() % 2) below[a] |= bit(b);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          if (has(below[a], b)) below[a] |= below[b];
      std::vector<Set> dom;
      for (Set x = 0; x < 8; ++x)
        if (x == 0 || rng() % 4) dom.push_back(x);
      f = relation_function(letters(3), below, dom);
    }
    if (!check(f, "muSubSup").holds) continue;
    ++done;
    level3_one(f, st);
  }
  return st;
}

// Every (η = id, ρ) pair on two elements over P(U).
inline HigherSweep eta_rho_sweep() {
  HigherSweep st;
  std::vector<std::pair<Set, Set>> id;
  for (Set x = 0; x < 4; ++x) id.emplace_back(x, x);
  ChoiceFunction eta = ChoiceFunction::make(letters(2), id);
  for (std::uint64_t code = 0; code < function_count(2); ++code) {
    AttackPair p{eta, function_from_code(2, code)};
    try {
      GenStructure s = represent_attacking_level2(p);
      if (verify_attacking(s, p).holds && s.level <= 2) {
        ++st.verified;
        st.max_arrows = std::max(st.max_arrows, static_cast<int>(s.arrows.size()));
      } else {
        st.failures.push_back(serialize_attack_pair(p));
      }
    } catch (const PreconditionFailed& e) {
      ++st.refused;
      ++st.refused_by[e.property()];
    } catch (const std::exception& e) {
      st.failures.push_back(std::string(e.what()) + " on\n" + serialize_attack_pair(p));
    }
  }
  return st;
}

}  // namespace fx
