#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmr/choicefn.hpp"
#include "nmr/prefstruct.hpp"
#include "nmr/sets.hpp"

namespace nmr {

// α: origin point -> point or arrow.  level, O and D are derived by finalize().
struct HigherArrow {
  std::string id;
  int origin = 0;       // node index
  bool to_node = true;
  int target = 0;       // node index or arrow index
  std::string sign;     // optional "+" / "-" label, carried through formats only
  int level = 0;
  Set O = 0, D = 0;     // element sets
};

struct GenStructure {
  std::vector<std::string> universe;
  std::vector<CopyNode> nodes;
  std::vector<HigherArrow> arrows;
  int level = 0;
  std::vector<std::vector<int>> attackers;  // arrows whose destination is arrow i
  std::vector<std::vector<int>> into;       // level-1 arrows ending in node i

  int add_node(int element, std::string index);
  int add_arrow(std::string id, int origin, bool to_node, int target);
  // Derives levels, O/D and the attack lists; rejects cycles among arrows.
  void finalize();
  int arrow_index(const std::string& id) const;  // -1 when absent
  int node_index(int element, const std::string& index) const;
  std::string node_label(int node) const;
};

inline constexpr int kDefaultMaxLevel = 16;

// Valid X-to-Y arrows (ids, in arrow order).
std::vector<std::string> valid_arrows(const GenStructure& s, Set x, Set y, int max_level = kDefaultMaxLevel);
// Valid X ⇒ Y arrows; needs X ⊆ Y.
std::vector<std::string> valid_arrows_sub(const GenStructure& s, Set x, Set y, int max_level = kDefaultMaxLevel);

Set higher_mu(const GenStructure& s, Set x);
// {x ∈ η(X): some copy of x has no valid X-to-η(X) arrow into it}
Set attacked_rho(const GenStructure& s, Set x, Set eta_x);

CheckResult check_sqsubseteq(const GenStructure& s, Set x, Set x2);
CheckResult totally_smooth(const GenStructure& s, const std::vector<Set>& domain);
CheckResult essentially_smooth(const GenStructure& s, const std::vector<Set>& domain);
// higher_mu against f on its domain
CheckResult verify_higher(const GenStructure& s, const ChoiceFunction& f);

// Level-1 view of a preferential structure and back.
GenStructure from_pref(const PrefStructure& p);

struct AttackPair {
  ChoiceFunction eta;
  ChoiceFunction rho;  // same domain as eta
};

CheckResult verify_attacking(const GenStructure& s, const AttackPair& a);
GenStructure represent_attacking_level2(const AttackPair& a);
GenStructure represent_level3_smooth(const ChoiceFunction& f);

// Exhaustive search over level-≤2 structures with one copy per element and
// no self-attacks (|U| ≤ 3) for one that represents f and is totally
// (`totally`) or essentially smooth on its domain.
struct Level2Search {
  std::optional<GenStructure> found;
  std::uint64_t examined = 0;
};
Level2Search search_level2(const ChoiceFunction& f, bool totally);

}  // namespace nmr
