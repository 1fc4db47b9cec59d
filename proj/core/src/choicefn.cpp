#include "nmr/choicefn.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "nmr/error.hpp"

namespace nmr {

ChoiceFunction ChoiceFunction::make(std::vector<std::string> universe,
                                    const std::vector<std::pair<Set, Set>>& entries) {
  ChoiceFunction f;
  if (universe.size() > kMaxChoiceUniverse)
    throw Error(ErrorKind::InvalidArgument, "choice functions support at most 16 elements");
  for (std::size_t i = 0; i < universe.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (universe[i] == universe[j]) throw Error(ErrorKind::Duplicate, "element " + universe[i]);
  f.universe = std::move(universe);
  Set all = f.full();
  for (const auto& [x, m] : entries) {
    if (!subset(x, all) || !subset(m, all))
      throw Error(ErrorKind::InvalidArgument, "set outside the universe");
    f.domain.push_back(x);
    f.mu.push_back(m);
  }
  f.normalize();
  for (std::size_t i = 1; i < f.domain.size(); ++i)
    if (f.domain[i] == f.domain[i - 1]) throw Error(ErrorKind::Duplicate, "domain member " + f.fmt(f.domain[i]));
  return f;
}

void ChoiceFunction::normalize() {
  std::vector<std::size_t> order(domain.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return lex_less(domain[a], domain[b]); });
  std::vector<Set> d, m;
  for (auto i : order) {
    d.push_back(domain[i]);
    m.push_back(mu[i]);
  }
  domain = std::move(d);
  mu = std::move(m);
  slot.assign(std::size_t{1} << n(), -1);
  for (std::size_t i = 0; i < domain.size(); ++i) slot[domain[i]] = static_cast<int>(i);
}

Set ChoiceFunction::at(Set x) const {
  if (x >= slot.size() || slot[x] < 0) throw Error(ErrorKind::DomainClosure, fmt(x) + " is not in the domain");
  return mu[slot[x]];
}

int ChoiceFunction::element(std::string_view name) const {
  for (int i = 0; i < n(); ++i)
    if (universe[i] == name) return i;
  throw Error(ErrorKind::UnknownNode, "element " + std::string(name));
}

Set ChoiceFunction::parse_set(const std::vector<std::string>& names) const {
  Set s = 0;
  for (const auto& nm : names) s |= bit(element(nm));
  return s;
}

namespace {

struct Token {
  Prop kind;
  const char* ascii;
  const char* symbol;
};

const Token kTokens[] = {
    {Prop::Sub, "muSub", "μ⊆"},         {Prop::Empty, "muEmpty", "μ∅"},
    {Prop::EmptyFin, "muEmptyFin", "μ∅fin"}, {Prop::PR, "muPR", "μPR"},
    {Prop::PRp, "muPR'", "μPR′"},        {Prop::OR, "muOR", "μOR"},
    {Prop::wOR, "muwOR", "μwOR"},        {Prop::DisjOR, "muDisjOR", "μdisjOR"},
    {Prop::CUT, "muCUT", "μCUT"},        {Prop::CM, "muCM", "μCM"},
    {Prop::ResM, "muResM", "μResM"},     {Prop::CUM, "muCUM", "μCUM"},
    {Prop::SubSup, "muSubSup", "μ⊆⊇"},   {Prop::Eq, "muEq", "μ="},
    {Prop::Eqp, "muEq'", "μ=′"},         {Prop::Par, "muPar", "μ∥"},
    {Prop::Cup, "muCup", "μ∪"},          {Prop::Cupp, "muCup'", "μ∪′"},
    {Prop::In, "muIn", "μ∈"},            {Prop::RatM, "muRatM", "μRatM"},
    {Prop::A, "muA", "μ𝒜"},             {Prop::HU, "HU", "HU"},
    {Prop::HUu, "HUu", "HU,u"},          {Prop::CumA, "muCumA", "μCum"},
    {Prop::CumtA, "muCumtA", "μCumt"},
};

const Token& token_of(Prop p) {
  for (const Token& t : kTokens)
    if (t.kind == p) return t;
  throw Error(ErrorKind::InvalidArgument, "unknown property");
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

}  // namespace

Property parse_property(std::string_view token) {
  std::string_view head = token, arg;
  if (auto c = token.find(':'); c != std::string_view::npos) {
    head = token.substr(0, c);
    arg = token.substr(c + 1);
  }
  for (const Token& t : kTokens) {
    if (head != t.ascii) continue;
    Property p;
    p.kind = t.kind;
    if (t.kind == Prop::CumA || t.kind == Prop::CumtA) {
      int a = -1;
      auto r = std::from_chars(arg.data(), arg.data() + arg.size(), a);
      if (arg.empty() || r.ec != std::errc{} || r.ptr != arg.data() + arg.size() || a < 0)
        throw Error(ErrorKind::InvalidArgument, "expected " + std::string(t.ascii) + ":<n>");
      p.alpha = a;
    } else if (t.kind == Prop::A) {
      if (arg.empty()) throw Error(ErrorKind::InvalidArgument, "muA needs a partition, e.g. muA:a,b<c");
      for (const std::string& block : split(arg, '<')) {
        auto elems = split(block, ',');
        if (block.empty()) throw Error(ErrorKind::InvalidArgument, "empty block in partition");
        p.blocks.push_back(elems);
      }
    } else if (!arg.empty()) {
      throw Error(ErrorKind::InvalidArgument, std::string(t.ascii) + " takes no parameter");
    }
    return p;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown property " + std::string(token));
}

std::string property_token(const Property& p) {
  std::string s = token_of(p.kind).ascii;
  if (p.kind == Prop::CumA || p.kind == Prop::CumtA) s += ":" + std::to_string(p.alpha);
  if (p.kind == Prop::A) {
    s += ":";
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
      if (i) s += "<";
      for (std::size_t j = 0; j < p.blocks[i].size(); ++j) s += (j ? "," : "") + p.blocks[i][j];
    }
  }
  return s;
}

std::string property_symbol(const Property& p) {
  std::string s = token_of(p.kind).symbol;
  if (p.kind == Prop::CumA || p.kind == Prop::CumtA) s += std::to_string(p.alpha);
  if (p.kind == Prop::HU || p.kind == Prop::HUu) s = "(" + s + ")";
  return s;
}

std::vector<Property> all_simple_properties() {
  std::vector<Property> out;
  for (const Token& t : kTokens)
    if (t.kind != Prop::A && t.kind != Prop::CumA && t.kind != Prop::CumtA) out.push_back({t.kind, 0, {}});
  return out;
}

HullTrace hull(const ChoiceFunction& f, Set u_set, std::optional<int> anchor) {
  HullTrace tr;
  tr.base = u_set;
  tr.anchor = anchor;
  tr.stages.push_back(u_set);
  while (true) {
    Set cur = tr.stages.back(), next = cur;
    for (std::size_t i = 0; i < f.domain.size(); ++i) {
      if (anchor && !has(f.domain[i], *anchor)) continue;
      if (subset(f.mu[i], cur)) next |= f.domain[i];
    }
    if (next == cur) break;
    tr.stages.push_back(next);
  }
  return tr;
}

namespace {

enum class Outcome { Holds, Fails, Needs };

// Slot layout of a property's instances.
enum class SlotKind { DomainSet, Element, Block };

struct Evaluator {
  const ChoiceFunction& f;
  const Property& p;
  std::vector<Set> blocks;  // resolved partition for muA
  Set missing = 0;

  const Set* get(Set x) {
    if (x < f.slot.size() && f.slot[x] >= 0) return &f.mu[f.slot[x]];
    missing = x;
    return nullptr;
  }

  std::vector<SlotKind> layout() const {
    using K = SlotKind;
    switch (p.kind) {
      case Prop::Sub: case Prop::Empty: case Prop::EmptyFin: return {K::DomainSet};
      case Prop::In: return {K::DomainSet, K::Element};
      case Prop::A: return {K::DomainSet, K::Block, K::Block};
      case Prop::HU: case Prop::HUu: return {K::DomainSet, K::Element, K::DomainSet};
      default: return {K::DomainSet, K::DomainSet};
    }
  }

  // sets[] holds the domain arguments in layout order; derived partners are
  // appended by witness() for display only.
  Outcome eval(const std::vector<Set>& s, const std::vector<int>& e) {
    switch (p.kind) {
      case Prop::Sub: return subset(*get(s[0]), s[0]) ? Outcome::Holds : Outcome::Fails;
      case Prop::Empty:
      case Prop::EmptyFin: return (*get(s[0]) == 0 && s[0] != 0) ? Outcome::Fails : Outcome::Holds;
      case Prop::PR: {  // (Y, X): X ⊆ Y ⇒ μ(Y) ∩ X ⊆ μ(X)
        Set y = s[0], x = s[1];
        if (!subset(x, y)) return Outcome::Holds;
        return subset(*get(y) & x, *get(x)) ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::PRp: {  // μ(X) ∩ Y ⊆ μ(X ∩ Y)
        const Set* m = get(s[0] & s[1]);
        if (!m) return Outcome::Needs;
        return subset(*get(s[0]) & s[1], *m) ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::OR:
      case Prop::wOR:
      case Prop::DisjOR: {
        if (p.kind == Prop::DisjOR && (s[0] & s[1])) return Outcome::Holds;
        const Set* m = get(s[0] | s[1]);
        if (!m) return Outcome::Needs;
        Set bound = p.kind == Prop::wOR ? (*get(s[0]) | s[1]) : (*get(s[0]) | *get(s[1]));
        return subset(*m, bound) ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::CUT:
      case Prop::CM:
      case Prop::CUM: {  // (X, Y): μ(X) ⊆ Y ⊆ X
        Set x = s[0], y = s[1], mx = *get(x), my = *get(y);
        if (!(subset(mx, y) && subset(y, x))) return Outcome::Holds;
        bool ok = p.kind == Prop::CUT ? subset(mx, my) : p.kind == Prop::CM ? subset(my, mx) : mx == my;
        return ok ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::ResM: {  // (X, A), B := μ(X): μ(X) ⊆ A ∩ B ⇒ μ(X ∩ A) ⊆ B
        Set x = s[0], a = s[1], mx = *get(x);
        if (!subset(mx, a)) return Outcome::Holds;
        const Set* m = get(x & a);
        if (!m) return Outcome::Needs;
        return subset(*m, mx) ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::SubSup: {
        Set mx = *get(s[0]), my = *get(s[1]);
        if (!(subset(mx, s[1]) && subset(my, s[0]))) return Outcome::Holds;
        return mx == my ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::RatM:
      case Prop::Eq: {  // (Y, X): X ⊆ Y, X ∩ μ(Y) ≠ ∅
        Set y = s[0], x = s[1], my = *get(y), mx = *get(x);
        if (!subset(x, y) || !(x & my)) return Outcome::Holds;
        bool ok = p.kind == Prop::RatM ? subset(mx, my & x) : mx == (my & x);
        return ok ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::Eqp: {  // (Y, X): μ(Y) ∩ X ≠ ∅ ⇒ μ(Y ∩ X) = μ(Y) ∩ X
        Set y = s[0], x = s[1], my = *get(y);
        if (!(my & x)) return Outcome::Holds;
        const Set* m = get(y & x);
        if (!m) return Outcome::Needs;
        return *m == (my & x) ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::Par: {
        const Set* m = get(s[0] | s[1]);
        if (!m) return Outcome::Needs;
        Set mx = *get(s[0]), my = *get(s[1]);
        return (*m == mx || *m == my || *m == (mx | my)) ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::Cup:
      case Prop::Cupp: {  // (X, Y): μ(Y) ∩ (X − μ(X)) ≠ ∅
        Set x = s[0], y = s[1], mx = *get(x), my = *get(y);
        if (!(my & (x & ~mx))) return Outcome::Holds;
        const Set* m = get(x | y);
        if (!m) return Outcome::Needs;
        bool ok = p.kind == Prop::Cup ? (*m & y) == 0 : *m == mx;
        return ok ? Outcome::Holds : Outcome::Fails;
      }
      case Prop::In: {  // a ∈ X − μ(X) ⇒ ∃b ∈ X. a ∉ μ({a,b})
        Set x = s[0];
        int a = e[0];
        if (!has(x, a) || has(*get(x), a)) return Outcome::Holds;
        bool need = false;
        Set first_missing = 0;
        for (int b : members(x)) {
          const Set* m = get(bit(a) | bit(b));
          if (!m) {
            if (!need) first_missing = bit(a) | bit(b);
            need = true;
            continue;
          }
          if (!has(*m, a)) return Outcome::Holds;
        }
        if (need) {
          missing = first_missing;
          return Outcome::Needs;
        }
        return Outcome::Fails;
      }
      case Prop::A: {
        int i = e[0], j = e[1];
        if (i >= j) return Outcome::Holds;
        Set x = s[0];
        if (!(x & blocks[i]) || !(x & blocks[j])) return Outcome::Holds;
        return (*get(x) & blocks[j]) ? Outcome::Fails : Outcome::Holds;
      }
      case Prop::HU:
      case Prop::HUu: {  // (U, u, Y): u ∈ μ(U), u ∈ Y − μ(Y) ⇒ μ(Y) ⊄ H
        Set u_set = s[0], y = s[1];
        int u = e[0];
        if (!has(*get(u_set), u) || !has(y, u) || has(*get(y), u)) return Outcome::Holds;
        auto anchor = p.kind == Prop::HUu ? std::optional<int>(u) : std::nullopt;
        Set h = hull(f, u_set, anchor).fixpoint();
        return subset(*get(y), h) ? Outcome::Fails : Outcome::Holds;
      }
      case Prop::CumA:
      case Prop::CumtA: break;
    }
    return Outcome::Holds;
  }
};

std::vector<Set> resolve_blocks(const ChoiceFunction& f, const Property& p) {
  std::vector<Set> out;
  Set seen = 0;
  for (const auto& b : p.blocks) {
    Set s = f.parse_set(b);
    if (!s) throw Error(ErrorKind::InvalidArgument, "empty block");
    if (s & seen) throw Error(ErrorKind::InvalidArgument, "partition blocks overlap");
    seen |= s;
    out.push_back(s);
  }
  if (seen != f.full()) throw Error(ErrorKind::InvalidArgument, "partition does not cover the universe");
  return out;
}

// μCumα instances: (U, X_0, ..., X_α) in lexicographic order, with the
// premise checked as each X_β is chosen.
CheckResult cum_alpha_impl(const ChoiceFunction& f, int alpha, bool transitive) {
  CheckResult r;
  std::size_t k = f.domain.size();
  std::vector<int> idx(alpha + 2, 0);
  auto rec = [&](auto&& self, int depth, Set u, Set mu_u, Set unions, Set meet) -> bool {
    // depth = number of X's chosen so far
    for (std::size_t i = 0; i < k; ++i) {
      Set x = f.domain[i], mx = f.mu[i];
      if (!subset(mx, u | unions)) continue;
      idx[depth + 1] = static_cast<int>(i);
      Set m2 = meet & x;
      if (depth == alpha) {
        Set lhs = (transitive ? x : m2) & mu_u;
        if (!subset(lhs, mx)) return true;
        continue;
      }
      if (self(self, depth + 1, u, mu_u, unions | x, m2)) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < k; ++i) {
    idx[0] = static_cast<int>(i);
    if (rec(rec, 0, f.domain[i], f.mu[i], 0, f.full())) {
      Witness w;
      for (int j : idx) w.sets.push_back(f.domain[j]);
      r.holds = false;
      r.witness = w;
      return r;
    }
  }
  return r;
}

bool cum_alpha_instance_fails(const ChoiceFunction& f, const Witness& w, bool transitive) {
  if (w.sets.size() < 2) return false;
  for (Set s : w.sets)
    if (!f.in_domain(s)) return false;
  Set u = w.sets[0], unions = 0, meet = f.full();
  for (std::size_t b = 1; b < w.sets.size(); ++b) {
    if (!subset(f.at(w.sets[b]), u | unions)) return false;
    unions |= w.sets[b];
    meet &= w.sets[b];
  }
  Set last = w.sets.back();
  Set lhs = (transitive ? last : meet) & f.at(u);
  return !subset(lhs, f.at(last));
}

}  // namespace

std::string format_witness(const ChoiceFunction& f, const Property& p, const Witness& w) {
  std::string out = "(";
  auto set_s = [&](Set s) { return f.fmt(s); };
  auto elem_s = [&](int e) { return e < f.n() ? f.universe[e] : std::to_string(e); };
  switch (p.kind) {
    case Prop::In: out += set_s(w.sets[0]) + ", " + elem_s(w.elems[0]); break;
    case Prop::HU:
    case Prop::HUu: out += set_s(w.sets[0]) + ", " + elem_s(w.elems[0]) + ", " + set_s(w.sets[1]); break;
    case Prop::A:
      out += set_s(w.sets[0]) + ", block " + std::to_string(w.elems[0]) + " < block " + std::to_string(w.elems[1]);
      break;
    default:
      for (std::size_t i = 0; i < w.sets.size(); ++i) out += (i ? ", " : "") + set_s(w.sets[i]);
  }
  return out + ")";
}

CheckResult check(const ChoiceFunction& f, const Property& p, CheckOptions opt) {
  if (p.kind == Prop::CumA || p.kind == Prop::CumtA)
    return check_cum_alpha(f, p.alpha, p.kind == Prop::CumtA, opt.alpha_bound);
  Evaluator ev{f, p, {}, 0};
  if (p.kind == Prop::A) ev.blocks = resolve_blocks(f, p);
  auto lay = ev.layout();
  std::size_t k = f.domain.size();
  int nblocks = static_cast<int>(ev.blocks.size());
  std::vector<Set> sets;
  std::vector<int> elems;
  CheckResult res;
  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == lay.size()) {
      ev.missing = 0;
      Outcome o = ev.eval(sets, elems);
      if (o == Outcome::Needs) {
        if (opt.closure == ClosureMode::Strict)
          throw Error(ErrorKind::DomainClosure, property_token(p) + " needs " + f.fmt(ev.missing) +
                                                    " for instance " + format_witness(f, p, {sets, elems}));
        return false;
      }
      return o == Outcome::Fails;
    }
    int range = lay[pos] == SlotKind::DomainSet ? static_cast<int>(k)
                : lay[pos] == SlotKind::Element ? f.n()
                                                : nblocks;
    for (int i = 0; i < range; ++i) {
      if (lay[pos] == SlotKind::DomainSet) sets.push_back(f.domain[i]);
      else elems.push_back(i);
      if (self(self, pos + 1)) return true;
      if (lay[pos] == SlotKind::DomainSet) sets.pop_back();
      else elems.pop_back();
    }
    return false;
  };
  if (rec(rec, 0)) {
    res.holds = false;
    Witness w{sets, elems};
    if (p.kind == Prop::ResM) w.sets.push_back(f.at(sets[0]));
    res.text = format_witness(f, p, w);
    res.witness = std::move(w);
  }
  return res;
}

CheckResult check(const ChoiceFunction& f, std::string_view token, CheckOptions opt) {
  return check(f, parse_property(token), opt);
}

CheckResult check_cum_alpha(const ChoiceFunction& f, int alpha, bool transitive, int bound) {
  if (alpha < 0) throw Error(ErrorKind::InvalidArgument, "alpha must be non-negative");
  if (alpha > bound)
    throw Error(ErrorKind::BoundExceeded, "alpha " + std::to_string(alpha) + " above bound " + std::to_string(bound));
  CheckResult r = cum_alpha_impl(f, alpha, transitive);
  if (!r.holds) {
    const Witness& w = *r.witness;
    std::string s = "(U=" + f.fmt(w.sets[0]) + ";";
    for (std::size_t i = 1; i < w.sets.size(); ++i) s += " X" + std::to_string(i - 1) + "=" + f.fmt(w.sets[i]);
    r.text = s + ")";
  }
  return r;
}

bool replay(const ChoiceFunction& f, const Property& p, const Witness& w) {
  if (p.kind == Prop::CumA || p.kind == Prop::CumtA) {
    if (static_cast<int>(w.sets.size()) != p.alpha + 2) return false;
    return cum_alpha_instance_fails(f, w, p.kind == Prop::CumtA);
  }
  Evaluator ev{f, p, {}, 0};
  if (p.kind == Prop::A) ev.blocks = resolve_blocks(f, p);
  auto lay = ev.layout();
  std::size_t nsets = 0, nelems = 0;
  for (SlotKind s : lay) (s == SlotKind::DomainSet ? nsets : nelems)++;
  if (w.sets.size() < nsets || w.elems.size() != nelems) return false;
  std::vector<Set> sets(w.sets.begin(), w.sets.begin() + nsets);
  for (Set s : sets)
    if (!f.in_domain(s)) return false;
  for (std::size_t i = 0; i < nelems; ++i) {
    int range = lay.back() == SlotKind::Block ? static_cast<int>(ev.blocks.size()) : f.n();
    if (w.elems[i] < 0 || w.elems[i] >= range) return false;
  }
  return ev.eval(sets, w.elems) == Outcome::Fails;
}

}  // namespace nmr
