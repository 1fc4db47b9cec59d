#include "nmr/sizesys.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "nmr/error.hpp"

namespace nmr {

SizeSystem SizeSystem::make(std::vector<std::string> universe,
                            std::vector<std::pair<Set, std::vector<Set>>> entries) {
  SizeSystem s;
  if (universe.size() > static_cast<std::size_t>(kMaxChoiceUniverse))
    throw Error(ErrorKind::InvalidArgument, "size systems support at most 16 elements");
  s.universe = std::move(universe);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  for (auto& [x, ideal] : entries) {
    if (!subset(x, full_set(s.n()))) throw Error(ErrorKind::InvalidArgument, "set outside the universe");
    if (!s.domain.empty() && s.domain.back() == x) throw Error(ErrorKind::Duplicate, "domain member " + s.fmt(x));
    std::sort(ideal.begin(), ideal.end(), LexLess{});
    ideal.erase(std::unique(ideal.begin(), ideal.end()), ideal.end());
    for (Set a : ideal)
      if (!subset(a, x)) throw Error(ErrorKind::InvalidArgument, s.fmt(a) + " is not a subset of " + s.fmt(x));
    s.domain.push_back(x);
    s.ideal.push_back(std::move(ideal));
  }
  if (!size_duality_ok(s)) throw std::logic_error("size system duality broken");
  return s;
}

int SizeSystem::index_of(Set x) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), x, LexLess{});
  return it != domain.end() && *it == x ? static_cast<int>(it - domain.begin()) : -1;
}

bool SizeSystem::small(int i, Set a) const {
  const auto& id = ideal[i];
  return std::binary_search(id.begin(), id.end(), a, LexLess{});
}

bool size_duality_ok(const SizeSystem& s) {
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    Set x = s.domain[i];
    for (Set a : subsets_lex(x)) {
      bool f = s.large(static_cast<int>(i), a);
      if (f != s.small(static_cast<int>(i), x & ~a)) return false;
      if (s.medium_plus(static_cast<int>(i), a) == s.small(static_cast<int>(i), a)) return false;
    }
  }
  return true;
}

namespace {

struct RuleToken {
  SizeRule rule;
  const char* ascii;
  bool param;
};

const RuleToken kRules[] = {
    {SizeRule::Opt, "Opt", false},          {SizeRule::iM, "iM", false},
    {SizeRule::eMI, "eMI", false},          {SizeRule::eMF, "eMF", false},
    {SizeRule::IcupDisj, "IcupDisj", false}, {SizeRule::nStar, "nStar", true},
    {SizeRule::Mplus, "Mplus", true},       {SizeRule::MplusOmega, "MplusOmega", true},
    {SizeRule::Mplusplus, "Mplusplus", true}, {SizeRule::OR, "OR", true},
    {SizeRule::CM, "CM", true},
};

}  // namespace

SizeRuleSpec parse_size_rule(std::string_view token) {
  std::string_view head = token, arg;
  if (auto c = token.find(':'); c != std::string_view::npos) {
    head = token.substr(0, c);
    arg = token.substr(c + 1);
  }
  if (head == "I") head = "nStar";
  for (const RuleToken& t : kRules) {
    if (head != t.ascii) continue;
    SizeRuleSpec r{t.rule, 0};
    if (t.param) {
      auto res = std::from_chars(arg.data(), arg.data() + arg.size(), r.n);
      if (arg.empty() || res.ec != std::errc{} || res.ptr != arg.data() + arg.size() || r.n < 1)
        throw Error(ErrorKind::InvalidArgument, "expected " + std::string(t.ascii) + ":<n>");
      if ((t.rule == SizeRule::MplusOmega && r.n > 4) || (t.rule == SizeRule::Mplusplus && r.n > 3))
        throw Error(ErrorKind::InvalidArgument, "no such version of " + std::string(t.ascii));
    } else if (!arg.empty()) {
      throw Error(ErrorKind::InvalidArgument, std::string(t.ascii) + " takes no parameter");
    }
    return r;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown size rule " + std::string(token));
}

std::string size_rule_token(const SizeRuleSpec& r) {
  for (const RuleToken& t : kRules)
    if (t.rule == r.rule) return t.param ? std::string(t.ascii) + ":" + std::to_string(r.n) : t.ascii;
  return "?";
}

CheckResult check_size_rule(const SizeSystem& s, const SizeRuleSpec& r, SizeCheckOptions opt) {
  if (r.rule == SizeRule::nStar || r.rule == SizeRule::Mplus || r.rule == SizeRule::OR || r.rule == SizeRule::CM) {
    if (r.n > opt.max_n) throw Error(ErrorKind::BoundExceeded, size_rule_token(r) + " above bound");
  }
  CheckResult res;
  std::vector<Set> wit;
  auto fail = [&](std::vector<Set> w) {
    res.holds = false;
    res.witness = Witness{w, {}};
    std::string t = "(";
    for (std::size_t i = 0; i < w.size(); ++i) t += (i ? ", " : "") + s.fmt(w[i]);
    res.text = t + ")";
    return res;
  };
  const int k = static_cast<int>(s.domain.size());
  const Set all = full_set(s.n());

  switch (r.rule) {
    case SizeRule::Opt:
      for (int i = 0; i < k; ++i)
        if (!s.small(i, 0)) return fail({s.domain[i]});
      return res;
    case SizeRule::iM:
      for (int i = 0; i < k; ++i)
        for (Set b : s.ideal[i])
          for (Set a : subsets_lex(b))
            if (!s.small(i, a)) return fail({s.domain[i], b, a});
      return res;
    case SizeRule::eMI:
    case SizeRule::eMF:
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          Set x = s.domain[i], y = s.domain[j];
          if (!subset(x, y)) continue;
          if (r.rule == SizeRule::eMI) {
            for (Set a : s.ideal[i])
              if (!s.small(j, a)) return fail({x, y, a});
          } else {
            for (Set a : subsets_lex(x))
              if (s.large(j, a) && !s.large(i, a)) return fail({x, y, a});
          }
        }
      return res;
    case SizeRule::IcupDisj:
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          Set x = s.domain[i], y = s.domain[j];
          if (x & y) continue;
          int u = s.index_of(x | y);
          if (u < 0) continue;
          for (Set a : s.ideal[i])
            for (Set b : s.ideal[j])
              if (!s.small(u, a | b)) return fail({x, y, a, b});
        }
      return res;
    case SizeRule::nStar:
      for (int i = 0; i < k; ++i) {
        Set x = s.domain[i];
        const auto& id = s.ideal[i];
        std::vector<Set> pick;
        std::function<bool(std::size_t, Set)> rec = [&](std::size_t from, Set acc) {
          if (static_cast<int>(pick.size()) == r.n) return acc == x;
          for (std::size_t t = from; t < id.size(); ++t) {
            pick.push_back(id[t]);
            if (rec(t, acc | id[t])) return true;
            pick.pop_back();
          }
          return false;
        };
        if (rec(0, 0)) {
          std::vector<Set> w{x};
          w.insert(w.end(), pick.begin(), pick.end());
          return fail(w);
        }
      }
      return res;
    case SizeRule::Mplus: {
      // chains X_1 ⊆ ... ⊆ X_n with X_i ∈ 𝓕(X_{i+1}); built from the top
      for (int top = 0; top < k; ++top) {
        std::vector<Set> chain{s.domain[top]};
        std::function<bool()> rec = [&]() {
          if (static_cast<int>(chain.size()) == r.n) return s.small(top, chain.back());
          Set upper = chain.back();
          int ui = s.index_of(upper);
          if (ui < 0) return false;
          for (Set lower : subsets_lex(upper)) {
            if (!s.large(ui, lower)) continue;
            chain.push_back(lower);
            if (rec()) return true;
            chain.pop_back();
          }
          return false;
        };
        if (r.n == 1) continue;
        if (rec()) {
          std::reverse(chain.begin(), chain.end());
          return fail(chain);
        }
      }
      return res;
    }
    case SizeRule::MplusOmega:
    case SizeRule::Mplusplus:
      for (int yi = 0; yi < k; ++yi) {
        Set y = s.domain[yi];
        if (r.rule == SizeRule::MplusOmega && r.n == 4) {
          for (Set a : s.ideal[yi])
            for (Set b : s.ideal[yi]) {
              int d = s.index_of(y & ~b);
              if (d >= 0 && !s.small(d, a & ~b)) return fail({y, a, b});
            }
          continue;
        }
        if (r.rule == SizeRule::Mplusplus && r.n != 3) {
          for (Set b : subsets_lex(y)) {
            if (s.large(yi, b)) continue;
            int d = s.index_of(y & ~b);
            if (d < 0) continue;
            for (Set a : subsets_lex(y)) {
              bool prem = r.n == 1 ? s.small(yi, a) : s.large(yi, a);
              bool concl = r.n == 1 ? s.small(d, a & ~b) : s.large(d, a & ~b);
              if (prem && !concl) return fail({y, a, b});
            }
          }
          continue;
        }
        // three-level forms A ⊆ X ⊆ Y with X ∈ 𝒴
        for (int xi = 0; xi < k; ++xi) {
          Set x = s.domain[xi];
          if (!subset(x, y)) continue;
          for (Set a : subsets_lex(x)) {
            bool prem = false, concl = true;
            if (r.rule == SizeRule::Mplusplus) {
              prem = s.medium_plus(xi, a) && s.medium_plus(yi, x);
              concl = s.medium_plus(yi, a);
            } else if (r.n == 1) {
              prem = s.large(xi, a) && s.medium_plus(yi, x);
              concl = s.medium_plus(yi, a);
            } else if (r.n == 2) {
              prem = s.medium_plus(xi, a) && s.large(yi, x);
              concl = s.medium_plus(yi, a);
            } else {
              prem = s.large(xi, a) && s.large(yi, x);
              concl = s.large(yi, a);
            }
            if (prem && !concl) return fail({y, x, a});
          }
        }
      }
      return res;
    case SizeRule::OR: {
      int m = r.n - 1;
      if (m < 1) return res;
      std::vector<int> idx(m, 0);
      std::function<bool(int)> rec = [&](int depth) {
        if (depth == m) {
          Set c = 0;
          for (int i : idx) c |= s.domain[i];
          int ci = s.index_of(c);
          if (ci < 0) return false;
          for (Set b : subsets_lex(all)) {
            bool prem = true;
            for (int i : idx)
              if (!s.small(i, s.domain[i] & ~b)) prem = false;
            if (prem && s.small(ci, c & b)) {
              wit.clear();
              for (int i : idx) wit.push_back(s.domain[i]);
              wit.push_back(b);
              return true;
            }
          }
          return false;
        }
        for (int i = depth ? idx[depth - 1] : 0; i < k; ++i) {
          idx[depth] = i;
          if (rec(depth + 1)) return true;
        }
        return false;
      };
      if (rec(0)) return fail(wit);
      return res;
    }
    case SizeRule::CM: {
      int m = r.n - 1;
      if (m < 1) return res;
      for (int ai = 0; ai < k; ++ai) {
        Set a = s.domain[ai];
        std::vector<Set> bs;
        for (Set b : subsets_lex(a))
          if (s.small(ai, a & ~b)) bs.push_back(b);
        std::vector<Set> pick;
        std::function<bool()> rec = [&]() {
          if (static_cast<int>(pick.size()) == m) {
            Set c = a;
            for (int i = 0; i + 1 < m; ++i) c &= pick[i];
            if (c == 0) return true;
            int ci = s.index_of(c);
            if (ci < 0) return false;
            return s.small(ci, c & pick.back());
          }
          for (Set b : bs) {
            pick.push_back(b);
            if (rec()) return true;
            pick.pop_back();
          }
          return false;
        };
        if (rec()) {
          std::vector<Set> w{a};
          w.insert(w.end(), pick.begin(), pick.end());
          return fail(w);
        }
      }
      return res;
    }
  }
  return res;
}

}  // namespace nmr
