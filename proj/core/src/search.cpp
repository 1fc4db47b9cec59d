#include "nmr/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "nmr/error.hpp"

namespace nmr {

Closure parse_closure(std::string_view spec) {
  Closure c;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view t = spec.substr(pos, end - pos);
    if (t == "cap" || t == "intersections") c.intersections = true;
    else if (t == "cup" || t == "unions") c.unions = true;
    else if (t == "minus" || t == "differences") c.differences = true;
    else if (t == "singletons") c.singletons = true;
    else if (!(t == "none" || t.empty())) throw Error(ErrorKind::InvalidArgument, "unknown closure " + std::string(t));
    pos = end + 1;
  }
  return c;
}

std::string closure_name(const Closure& c) {
  std::string s;
  auto add = [&](bool on, const char* n) {
    if (on) s += (s.empty() ? "" : ",") + std::string(n);
  };
  add(c.intersections, "cap");
  add(c.unions, "cup");
  add(c.differences, "minus");
  add(c.singletons, "singletons");
  return s.empty() ? "none" : s;
}

Set close_family(const std::vector<Set>& gens, int n, const Closure& c) {
  if (n > 5) throw Error(ErrorKind::InvalidArgument, "family masks hold universes of at most 5 elements");
  Set fam = 0;
  for (Set g : gens) fam |= bit(static_cast<int>(g));
  if (c.singletons)
    for (int i = 0; i < n; ++i) fam |= bit(static_cast<int>(bit(i)));
  if (!(c.intersections || c.unions || c.differences)) return fam;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> in = members(fam);
    for (int a : in)
      for (int b : in) {
        Set add = 0;
        if (c.intersections) add |= bit(a & b);
        if (c.unions) add |= bit(a | b);
        if (c.differences) add |= bit(a & ~b);
        if (!subset(add, fam)) {
          fam |= add;
          grew = true;
        }
      }
  }
  return fam;
}

namespace {

bool has_kind(const std::vector<Property>& ps, Prop k) {
  return std::any_of(ps.begin(), ps.end(), [&](const Property& p) { return p.kind == k; });
}

bool hull_dependent(const Property& p) { return p.kind == Prop::HU || p.kind == Prop::HUu; }

// Domain sets named by a violating instance, counting derived partners.
int instance_arity(const Property& p, int n) {
  switch (p.kind) {
    case Prop::Sub: case Prop::Empty: case Prop::EmptyFin: case Prop::A: return 1;
    case Prop::In: return 1 + n;
    case Prop::PRp: case Prop::OR: case Prop::wOR: case Prop::DisjOR: case Prop::ResM:
    case Prop::Eqp: case Prop::Par: case Prop::Cup: case Prop::Cupp: return 3;
    case Prop::CumA: case Prop::CumtA: return p.alpha + 2;
    default: return 2;
  }
}

std::vector<Set> by_size(std::vector<Set> v) {
  std::stable_sort(v.begin(), v.end(), [](Set a, Set b) {
    return card(a) != card(b) ? card(a) < card(b) : lex_less(a, b);
  });
  return v;
}

std::vector<Set> family_sets(Set fam) {
  std::vector<Set> out;
  for (int s : members(fam)) out.push_back(static_cast<Set>(s));
  return out;
}

bool family_less(Set a, Set b) {
  if (card(a) != card(b)) return card(a) < card(b);
  auto va = by_size(family_sets(a)), vb = by_size(family_sets(b));
  for (std::size_t i = 0; i < va.size(); ++i)
    if (va[i] != vb[i]) return card(va[i]) != card(vb[i]) ? card(va[i]) < card(vb[i]) : lex_less(va[i], vb[i]);
  return false;
}

std::vector<std::string> names_for(int n) {
  std::vector<std::string> u;
  for (int i = 0; i < n; ++i) u.push_back(std::string(1, static_cast<char>('a' + i)));
  return u;
}

struct Found {
  ChoiceFunction f;
  Property violated;
  CheckResult failure;
};

// Backtracking over μ on one family; hypotheses pruned on every prefix.
class FamilySearch {
 public:
  FamilySearch(const SearchConfig& cfg, int n, Set fam) : cfg_(cfg), n_(n) {
    order_ = by_size(family_sets(fam));
    sub_ = has_kind(cfg.hypotheses, Prop::Sub);
    for (const Property& p : cfg.hypotheses) (hull_dependent(p) ? leaf_ : prefix_).push_back(p);
    f_.universe = names_for(n);
    f_.slot.assign(std::size_t{1} << n, -1);
  }

  std::optional<Found> run(std::uint64_t& examined) {
    examined_ = &examined;
    if (rec(0)) return found_;
    return std::nullopt;
  }

 private:
  const SearchConfig& cfg_;
  int n_;
  bool sub_ = false;
  std::vector<Set> order_;
  std::vector<Property> prefix_, leaf_;
  ChoiceFunction f_;
  std::optional<Found> found_;
  std::uint64_t* examined_ = nullptr;

  bool consistent() const {
    CheckOptions opt{ClosureMode::Lenient, 4};
    for (const Property& p : prefix_)
      if (!check(f_, p, opt).holds) return false;
    return true;
  }

  bool leaf() {
    ++*examined_;
    ChoiceFunction g = f_;
    g.normalize();
    CheckOptions opt{ClosureMode::Lenient, 4};
    for (const Property& p : leaf_)
      if (!check(g, p, opt).holds) return false;
    for (const Property& c : cfg_.conclusions) {
      CheckResult r = check(g, c, opt);
      if (!r.holds) {
        found_ = Found{g, c, r};
        return true;
      }
    }
    return false;
  }

  bool rec(std::size_t depth) {
    if (depth == order_.size()) return leaf();
    Set x = order_[depth];
    for (Set v : by_size(subsets_lex(sub_ ? x : full_set(n_)))) {
      f_.domain.push_back(x);
      f_.mu.push_back(v);
      f_.slot[x] = static_cast<int>(depth);
      bool ok = consistent();
      if (ok && rec(depth + 1)) return true;
      f_.domain.pop_back();
      f_.mu.pop_back();
      f_.slot[x] = -1;
    }
    return false;
  }
};

double function_count(Set fam, int n, bool sub) {
  double total = 1;
  for (Set x : family_sets(fam)) total *= static_cast<double>(std::uint64_t{1} << (sub ? card(x) : n));
  return total;
}

std::vector<Set> closed_families(int n, const Closure& c) {
  std::vector<Set> out;
  Set all_sets = static_cast<Set>(full_set(1 << n));
  for (Set fam = all_sets;; fam = (fam - 1) & all_sets) {
    if (fam && close_family(family_sets(fam), n, c) == fam) out.push_back(fam);
    if (fam == 0) break;
  }
  std::sort(out.begin(), out.end(), family_less);
  return out;
}

std::vector<Set> generated_families(int n, const Closure& c, int g, int max_size = 1 << 30) {
  std::vector<Set> sets;
  for (Set s = 0; s < (Set{1} << n); ++s) sets.push_back(s);
  std::vector<Set> out;
  std::vector<Set> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!pick.empty()) {
      Set fam = close_family(pick, n, c);
      if (card(fam) <= max_size) out.push_back(fam);
    }
    if (static_cast<int>(pick.size()) == g) return;
    for (std::size_t i = from; i < sets.size(); ++i) {
      pick.push_back(sets[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), family_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Runs the families in order; with several threads the lowest-index witness wins.
std::optional<Found> run_families(const SearchConfig& cfg, int n, const std::vector<Set>& fams,
                                  std::uint64_t& examined) {
  int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (Set fam : fams) {
      FamilySearch fs(cfg, n, fam);
      if (auto r = fs.run(examined)) return r;
    }
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0}, best{fams.size()};
  std::atomic<std::uint64_t> total{0};
  std::vector<std::optional<Found>> results(fams.size());
  auto worker = [&] {
    std::uint64_t local = 0;
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= fams.size() || i > best.load()) break;
      FamilySearch fs(cfg, n, fams[i]);
      if (auto r = fs.run(local)) {
        results[i] = std::move(r);
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
    total += local;
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  examined += total.load();
  if (best.load() < fams.size()) return results[best.load()];
  return std::nullopt;
}

// Random functions biased towards structured choice (minimal elements of a
// random relation or ranking) so that hypotheses are met often enough.
ChoiceFunction sample_function(std::mt19937_64& rng, int n, const Closure& c, bool sub) {
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<Set> any(0, full_set(n));
  std::uniform_int_distribution<Set> nonempty(1, full_set(n));
  std::uniform_int_distribution<int> gens(1, 4);
  std::vector<Set> g;
  for (int k = gens(rng); k > 0; --k) g.push_back(nonempty(rng));
  Set fam = close_family(g, n, c);
  int style = coin(rng);
  std::vector<Set> below(n, 0);  // below[i]: elements preferred to i
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[i] = std::uniform_int_distribution<int>(0, n - 1)(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::uniform_int_distribution<int>(0, 3)(rng) == 0) below[i] |= bit(j);
  std::vector<std::pair<Set, Set>> entries;
  for (Set x : family_sets(fam)) {
    Set m = 0;
    if (style == 0) {
      m = any(rng);
      if (sub) m &= x;
    } else if (style == 1) {
      for (int i : members(x))
        if (!(below[i] & x)) m |= bit(i);
    } else {
      int best = n;
      for (int i : members(x)) best = std::min(best, rank[i]);
      for (int i : members(x))
        if (rank[i] == best) m |= bit(i);
    }
    entries.emplace_back(x, m);
  }
  return ChoiceFunction::make(names_for(n), entries);
}

}  // namespace

SearchReport search_counterexample(const SearchConfig& cfg) {
  SearchReport rep;
  if (cfg.bound > 5) throw Error(ErrorKind::BoundExceeded, "search bound above 5");
  bool sub = has_kind(cfg.hypotheses, Prop::Sub);
  bool restrictable = std::none_of(cfg.conclusions.begin(), cfg.conclusions.end(), hull_dependent);
  for (int n = 1; n <= cfg.bound && !rep.found; ++n) {
    std::optional<Found> hit;
    std::ostringstream line;
    line << "n=" << n << ": ";
    if (n <= cfg.exhaustive_max) {
      auto all = closed_families(n, cfg.closure);
      double cost = 0;
      for (Set fam : all) cost += function_count(fam, n, sub);
      if (cost <= static_cast<double>(cfg.exhaustive_budget) || !restrictable) {
        line << "exhaustive over " << all.size() << " closed families";
        hit = run_families(cfg, n, all, rep.examined);
      } else {
        int g = 0;
        for (const Property& c : cfg.conclusions) g = std::max(g, instance_arity(c, n));
        auto fams = generated_families(n, cfg.closure, g);
        line << "exhaustive over " << fams.size() << " families generated by at most " << g << " sets";
        hit = run_families(cfg, n, fams, rep.examined);
      }
    } else {
      auto fams = generated_families(n, cfg.closure, 2, 3);
      line << "exhaustive over " << fams.size() << " small families, then " << cfg.samples
           << " samples (seed " << cfg.seed << ")";
      hit = run_families(cfg, n, fams, rep.examined);
      std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(n));
      CheckOptions opt{ClosureMode::Lenient, 4};
      for (int s = 0; s < cfg.samples && !hit; ++s) {
        ChoiceFunction f = sample_function(rng, n, cfg.closure, sub);
        ++rep.examined;
        bool ok = true;
        for (const Property& p : cfg.hypotheses)
          if (!check(f, p, opt).holds) {
            ok = false;
            break;
          }
        if (!ok) continue;
        for (const Property& c : cfg.conclusions) {
          CheckResult r = check(f, c, opt);
          if (!r.holds) {
            hit = Found{f, c, r};
            break;
          }
        }
      }
    }
    rep.strategy.push_back(line.str());
    if (hit) {
      rep.found = true;
      rep.function = hit->f;
      rep.violated = hit->violated;
      rep.failure = hit->failure;
      rep.universe = n;
    }
  }
  return rep;
}

namespace {

struct SizeSearch {
  const SizeSearchConfig& cfg;
  std::uint64_t& examined;

  std::optional<std::pair<SizeSystem, CheckResult>> test(const SizeSystem& s) {
    ++examined;
    for (const SizeRuleSpec& h : cfg.hypotheses)
      if (!check_size_rule(s, h).holds) return std::nullopt;
    CheckResult r = check_size_rule(s, cfg.conclusion);
    if (r.holds) return std::nullopt;
    return std::make_pair(s, r);
  }
};

}  // namespace

SizeSearchReport search_size_counterexample(const SizeSearchConfig& cfg) {
  SizeSearchReport rep;
  if (cfg.bound > 5) throw Error(ErrorKind::BoundExceeded, "search bound above 5");
  SizeSearch ss{cfg, rep.examined};
  for (int n = 1; n <= cfg.bound && !rep.found; ++n) {
    std::optional<std::pair<SizeSystem, CheckResult>> hit;
    std::ostringstream line;
    line << "n=" << n << ": ";
    std::vector<Set> nonempty;
    for (Set x = 1; x <= full_set(n); ++x) nonempty.push_back(x);
    std::sort(nonempty.begin(), nonempty.end(), LexLess{});
    if (n <= cfg.exhaustive_max) {
      line << "exhaustive over domains and ideals";
      // domains: nonempty subfamilies of P(U) - {∅}; ideals: any family of subsets
      std::size_t k = nonempty.size();
      for (std::uint32_t dm = 1; dm < (1u << k) && !hit; ++dm) {
        std::vector<Set> dom;
        for (std::size_t i = 0; i < k; ++i)
          if ((dm >> i) & 1u) dom.push_back(nonempty[i]);
        std::vector<std::vector<Set>> choices;
        for (Set x : dom) choices.push_back(subsets_lex(x));
        std::vector<std::uint32_t> pick(dom.size(), 0);
        while (!hit) {
          std::vector<std::pair<Set, std::vector<Set>>> entries;
          for (std::size_t i = 0; i < dom.size(); ++i) {
            std::vector<Set> id;
            for (std::size_t j = 0; j < choices[i].size(); ++j)
              if ((pick[i] >> j) & 1u) id.push_back(choices[i][j]);
            entries.emplace_back(dom[i], id);
          }
          hit = ss.test(SizeSystem::make(names_for(n), entries));
          std::size_t i = 0;
          for (; i < dom.size(); ++i) {
            if (++pick[i] < (1u << choices[i].size())) break;
            pick[i] = 0;
          }
          if (i == dom.size()) break;
        }
      }
    } else {
      line << cfg.samples << " samples (seed " << cfg.seed << ")";
      std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(n));
      for (int s = 0; s < cfg.samples && !hit; ++s) {
        bool full_domain = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
        std::vector<std::pair<Set, std::vector<Set>>> entries;
        for (Set x : nonempty) {
          if (!full_domain && std::uniform_int_distribution<int>(0, 1)(rng)) continue;
          auto sub = subsets_lex(x);
          std::vector<Set> id;
          if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
            for (Set a : sub)
              if (std::uniform_int_distribution<int>(0, 1)(rng)) id.push_back(a);
          } else {
            // downward closure of up to two random subsets
            std::vector<Set> tops;
            int t = std::uniform_int_distribution<int>(0, 2)(rng);
            for (int j = 0; j < t; ++j)
              tops.push_back(sub[std::uniform_int_distribution<std::size_t>(0, sub.size() - 1)(rng)]);
            for (Set a : sub)
              if (a == 0 || std::any_of(tops.begin(), tops.end(), [&](Set top) { return subset(a, top) && top != x; }))
                id.push_back(a);
          }
          entries.emplace_back(x, id);
        }
        if (entries.empty()) continue;
        hit = ss.test(SizeSystem::make(names_for(n), entries));
      }
    }
    rep.strategy.push_back(line.str());
    if (hit) {
      rep.found = true;
      rep.system = hit->first;
      rep.failure = hit->second;
      rep.universe = n;
    }
  }
  return rep;
}

std::optional<HorizonWitness> search_horizon_nonmonotone(int max_nodes) {
  for (int n = 2; n <= max_nodes; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::size_t combos = 1;
    for (std::size_t p = 0; p < pairs.size(); ++p) combos *= 3;
    auto names = names_for(n);
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<RawArrow> arrows;
      std::size_t c = code;
      for (auto [i, j] : pairs) {
        int v = static_cast<int>(c % 3);
        c /= 3;
        if (v) arrows.push_back({names[i], names[j], v == 1 ? Polarity::Positive : Polarity::Negative});
      }
      BlockNet net = diagram_from_arrows(arrows, names);
      std::uint32_t all = full_set(n);
      for (std::uint32_t a = 1; a <= all; ++a) {
        std::uint32_t ha = horizon_mask(net, a);
        for (int extra = 0; extra < n; ++extra) {
          if ((a >> extra) & 1u) continue;
          std::uint32_t b = a | (1u << extra);
          std::uint32_t lost = ha & ~horizon_mask(net, b);
          if (lost) return HorizonWitness{net, a, b, static_cast<NodeId>(std::countr_zero(lost))};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace nmr
