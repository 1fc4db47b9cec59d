#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nmr/sets.hpp"

namespace nmr {

inline constexpr int kMaxChoiceUniverse = 16;

// mu : 𝒴 -> P(U) on an explicit domain.  `domain` is kept in lexicographic
// set order by make(); `slot` maps a set bitmask to its domain index or -1.
struct ChoiceFunction {
  std::vector<std::string> universe;
  std::vector<Set> domain;
  std::vector<Set> mu;
  std::vector<int> slot;

  static ChoiceFunction make(std::vector<std::string> universe,
                             const std::vector<std::pair<Set, Set>>& entries);

  int n() const { return static_cast<int>(universe.size()); }
  Set full() const { return full_set(n()); }
  bool in_domain(Set x) const { return slot[x] >= 0; }
  Set at(Set x) const;  // throws when x is not in the domain
  int element(std::string_view name) const;
  Set parse_set(const std::vector<std::string>& names) const;
  std::string fmt(Set s) const { return format_set(s, universe); }

  // re-sorts the domain and rebuilds `slot` after direct edits
  void normalize();
  bool operator==(const ChoiceFunction& o) const {
    return universe == o.universe && domain == o.domain && mu == o.mu;
  }
};

enum class Prop {
  Sub, Empty, EmptyFin, PR, PRp, OR, wOR, DisjOR, CUT, CM, ResM, CUM, SubSup,
  Eq, Eqp, Par, Cup, Cupp, In, RatM, A, HU, HUu, CumA, CumtA
};

struct Property {
  Prop kind = Prop::Sub;
  int alpha = 0;                                  // CumA / CumtA
  std::vector<std::vector<std::string>> blocks;  // A: best block first
  bool operator==(const Property&) const = default;
};

Property parse_property(std::string_view token);
std::string property_token(const Property& p);
std::string property_symbol(const Property& p);
std::vector<Property> all_simple_properties();

// A violating instantiation: domain sets (plus derived partners where the
// condition names them) and elements, in the order the condition quantifies.
struct Witness {
  std::vector<Set> sets;
  std::vector<int> elems;
  bool operator==(const Witness&) const = default;
};

struct CheckResult {
  bool holds = true;
  std::optional<Witness> witness;
  std::string text;  // rendered witness, empty when the property holds
};

enum class ClosureMode { Strict, Lenient };

struct CheckOptions {
  ClosureMode closure = ClosureMode::Strict;
  int alpha_bound = 4;
};

CheckResult check(const ChoiceFunction& f, const Property& p, CheckOptions opt = {});
CheckResult check(const ChoiceFunction& f, std::string_view token, CheckOptions opt = {});

// True iff the given instance violates p (the witness re-fails).
bool replay(const ChoiceFunction& f, const Property& p, const Witness& w);

std::string format_witness(const ChoiceFunction& f, const Property& p, const Witness& w);

struct HullTrace {
  Set base = 0;
  std::optional<int> anchor;
  std::vector<Set> stages;  // stages[0] == base, last entry is the fixpoint
  Set fixpoint() const { return stages.back(); }
};

HullTrace hull(const ChoiceFunction& f, Set u_set, std::optional<int> anchor);

CheckResult check_cum_alpha(const ChoiceFunction& f, int alpha, bool transitive, int bound = 4);

}  // namespace nmr
