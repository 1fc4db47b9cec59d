#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nmr/choicefn.hpp"
#include "nmr/sets.hpp"

namespace nmr {

// Per-member ideals of small subsets.  Large (𝓕) and medium-or-large (𝓜⁺)
// sets are derived, never stored.
struct SizeSystem {
  std::vector<std::string> universe;
  std::vector<Set> domain;               // lexicographic order
  std::vector<std::vector<Set>> ideal;   // ideal[i] ⊆ P(domain[i]), sorted

  static SizeSystem make(std::vector<std::string> universe,
                         std::vector<std::pair<Set, std::vector<Set>>> entries);

  int n() const { return static_cast<int>(universe.size()); }
  int index_of(Set x) const;  // -1 when absent
  bool small(int i, Set a) const;
  bool large(int i, Set a) const { return subset(a, domain[i]) && small(i, domain[i] & ~a); }
  bool medium_plus(int i, Set a) const { return subset(a, domain[i]) && !small(i, a); }
  std::string fmt(Set s) const { return format_set(s, universe); }
  bool operator==(const SizeSystem&) const = default;
};

enum class SizeRule { Opt, iM, eMI, eMF, IcupDisj, nStar, Mplus, MplusOmega, Mplusplus, OR, CM };

struct SizeRuleSpec {
  SizeRule rule = SizeRule::Opt;
  int n = 0;
  bool operator==(const SizeRuleSpec&) const = default;
};

SizeRuleSpec parse_size_rule(std::string_view token);
std::string size_rule_token(const SizeRuleSpec& r);

struct SizeCheckOptions {
  int max_n = 8;
};

CheckResult check_size_rule(const SizeSystem& s, const SizeRuleSpec& r, SizeCheckOptions opt = {});

// Asserts 𝓕/𝓘 duality and that every ideal member lies inside its set.
bool size_duality_ok(const SizeSystem& s);

}  // namespace nmr
