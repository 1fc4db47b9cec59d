#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "nmr/choicefn.hpp"
#include "nmr/sets.hpp"

namespace nmr {

// ⟨x,i⟩: an element with an opaque, whitespace-free copy index.
struct CopyNode {
  int element = 0;
  std::string index;
  auto operator<=>(const CopyNode&) const = default;
};

// Copies and ≺.  rel holds (lower, upper) node pairs: nodes[lower] ≺ nodes[upper].
struct PrefStructure {
  std::vector<std::string> universe;
  std::vector<CopyNode> nodes;
  std::vector<std::pair<int, int>> rel;
  std::vector<std::vector<int>> below;  // rebuilt by finalize()

  int add_copy(int element, std::string index);  // duplicates are rejected by finalize()
  void add_pair(int lower, int upper) { rel.emplace_back(lower, upper); }
  // Sorts nodes by (element, index), dedupes rel and rebuilds `below`.
  void finalize();
  int find(int element, const std::string& index) const;  // -1 when absent
  bool precedes(int lower, int upper) const;
  std::string label(int node) const;  // "a.index"
  Set elements() const;
  bool operator==(const PrefStructure& o) const {
    return universe == o.universe && nodes == o.nodes && rel == o.rel;
  }
};

// Ordered blocks, best first.
struct RankedPartition {
  std::vector<Set> blocks;
  int rank(int element) const;  // -1 when uncovered
  bool operator==(const RankedPartition&) const = default;
};

RankedPartition make_partition(const ChoiceFunction& f, const std::vector<std::vector<std::string>>& blocks);

Set mu(const PrefStructure& s, Set x);
// mu of s on every member of the domain of f.
ChoiceFunction derived_function(const PrefStructure& s, const std::vector<Set>& domain);

CheckResult verify(const PrefStructure& s, const ChoiceFunction& f);
CheckResult is_smooth(const PrefStructure& s, const std::vector<Set>& domain);
CheckResult is_transitive(const PrefStructure& s);
CheckResult is_irreflexive(const PrefStructure& s);
CheckResult is_ranked(const PrefStructure& s);
CheckResult is_A_ranked(const PrefStructure& s, const RankedPartition& p);

PrefStructure represent_general(const ChoiceFunction& f);
PrefStructure represent_transitive(const ChoiceFunction& f);
PrefStructure represent_smooth(const ChoiceFunction& f);
PrefStructure represent_smooth_transitive(const ChoiceFunction& f);
PrefStructure represent_ranked(const ChoiceFunction& f);
PrefStructure represent_A_ranked(const ChoiceFunction& f, const RankedPartition& p, bool smooth);

}  // namespace nmr
