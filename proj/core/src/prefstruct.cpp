#include "nmr/prefstruct.hpp"

#include <algorithm>
#include <numeric>

#include "nmr/error.hpp"

namespace nmr {

int PrefStructure::add_copy(int element, std::string index) {
  nodes.push_back({element, std::move(index)});
  return static_cast<int>(nodes.size()) - 1;
}

int PrefStructure::find(int element, const std::string& index) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].element == element && nodes[i].index == index) return static_cast<int>(i);
  return -1;
}

void PrefStructure::finalize() {
  std::vector<int> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return nodes[a] < nodes[b]; });
  std::vector<int> pos(nodes.size());
  std::vector<CopyNode> sorted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[order[i]] = static_cast<int>(i);
    sorted.push_back(nodes[order[i]]);
  }
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) throw Error(ErrorKind::Duplicate, "copy " + sorted[i].index);
  nodes = std::move(sorted);
  for (auto& [a, b] : rel) {
    a = pos[a];
    b = pos[b];
  }
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  below.assign(nodes.size(), {});
  for (auto [a, b] : rel) below[b].push_back(a);
}

bool PrefStructure::precedes(int lower, int upper) const {
  return std::binary_search(rel.begin(), rel.end(), std::make_pair(lower, upper));
}

std::string PrefStructure::label(int node) const {
  const CopyNode& c = nodes[node];
  return universe[c.element] + "." + c.index;
}

Set PrefStructure::elements() const {
  Set s = 0;
  for (const CopyNode& c : nodes) s |= bit(c.element);
  return s;
}

int RankedPartition::rank(int element) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (has(blocks[i], element)) return static_cast<int>(i);
  return -1;
}

RankedPartition make_partition(const ChoiceFunction& f, const std::vector<std::vector<std::string>>& blocks) {
  RankedPartition p;
  Set seen = 0;
  for (const auto& b : blocks) {
    Set s = f.parse_set(b);
    if (!s) throw Error(ErrorKind::InvalidArgument, "empty block");
    if (s & seen) throw Error(ErrorKind::InvalidArgument, "partition blocks overlap");
    seen |= s;
    p.blocks.push_back(s);
  }
  if (seen != f.full()) throw Error(ErrorKind::InvalidArgument, "partition does not cover the universe");
  return p;
}

namespace {

bool minimal_in(const PrefStructure& s, int node, Set x) {
  for (int b : s.below[node])
    if (has(x, s.nodes[b].element)) return false;
  return true;
}

}  // namespace

Set mu(const PrefStructure& s, Set x) {
  Set out = 0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    int e = s.nodes[i].element;
    if (has(x, e) && !has(out, e) && minimal_in(s, static_cast<int>(i), x)) out |= bit(e);
  }
  return out;
}

ChoiceFunction derived_function(const PrefStructure& s, const std::vector<Set>& domain) {
  std::vector<std::pair<Set, Set>> entries;
  for (Set x : domain) entries.emplace_back(x, mu(s, x));
  return ChoiceFunction::make(s.universe, entries);
}

CheckResult verify(const PrefStructure& s, const ChoiceFunction& f) {
  CheckResult r;
  for (std::size_t i = 0; i < f.domain.size(); ++i) {
    Set got = mu(s, f.domain[i]);
    if (got != f.mu[i]) {
      r.holds = false;
      r.witness = Witness{{f.domain[i], got}, {}};
      r.text = "mu(" + f.fmt(f.domain[i]) + ") = " + format_set(got, s.universe) + ", expected " + f.fmt(f.mu[i]);
      return r;
    }
  }
  return r;
}

CheckResult is_smooth(const PrefStructure& s, const std::vector<Set>& domain) {
  CheckResult r;
  for (Set x : domain) {
    std::vector<char> minimal(s.nodes.size(), 0);
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
      minimal[i] = has(x, s.nodes[i].element) && minimal_in(s, static_cast<int>(i), x);
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      if (!has(x, s.nodes[i].element) || minimal[i]) continue;
      bool covered = std::any_of(s.below[i].begin(), s.below[i].end(), [&](int b) { return minimal[b] != 0; });
      if (!covered) {
        r.holds = false;
        r.witness = Witness{{x}, {static_cast<int>(i)}};
        r.text = "(" + format_set(x, s.universe) + ", " + s.label(static_cast<int>(i)) + ")";
        return r;
      }
    }
  }
  return r;
}

CheckResult is_transitive(const PrefStructure& s) {
  CheckResult r;
  std::vector<std::vector<int>> above(s.nodes.size());
  for (auto [a, b] : s.rel) above[a].push_back(b);
  for (auto [a, b] : s.rel)
    for (int c : above[b]) {
      if (s.precedes(a, c)) continue;
      r.holds = false;
      r.witness = Witness{{}, {a, b, c}};
      r.text = "(" + s.label(a) + ", " + s.label(b) + ", " + s.label(c) + ")";
      return r;
    }
  return r;
}

CheckResult is_irreflexive(const PrefStructure& s) {
  CheckResult r;
  for (auto [a, b] : s.rel)
    if (a == b) {
      r.holds = false;
      r.witness = Witness{{}, {a}};
      r.text = "(" + s.label(a) + ")";
      return r;
    }
  return r;
}

// Ranked: a strict partial order that is modular (a ≺ b ⇒ a ≺ c or c ≺ b).
CheckResult is_ranked(const PrefStructure& s) {
  CheckResult r = is_irreflexive(s);
  if (!r.holds) return r;
  r = is_transitive(s);
  if (!r.holds) return r;
  int n = static_cast<int>(s.nodes.size());
  for (auto [a, b] : s.rel)
    for (int c = 0; c < n; ++c)
      if (!s.precedes(a, c) && !s.precedes(c, b)) {
        r.holds = false;
        r.witness = Witness{{}, {a, b, c}};
        r.text = "(" + s.label(a) + " < " + s.label(b) + ", " + s.label(c) + ")";
        return r;
      }
  return r;
}

CheckResult is_A_ranked(const PrefStructure& s, const RankedPartition& p) {
  CheckResult r;
  int n = static_cast<int>(s.nodes.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.rank(s.nodes[a].element) < p.rank(s.nodes[b].element) && !s.precedes(a, b)) {
        r.holds = false;
        r.witness = Witness{{}, {a, b}};
        r.text = "(" + s.label(a) + ", " + s.label(b) + ")";
        return r;
      }
  return r;
}

}  // namespace nmr
