#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmr/blocking.hpp"
#include "nmr/choicefn.hpp"
#include "nmr/sizesys.hpp"

namespace nmr {

// Closure conditions imposed on candidate domains.
struct Closure {
  bool intersections = false;
  bool unions = false;
  bool differences = false;
  bool singletons = false;
  bool operator==(const Closure&) const = default;
};

Closure parse_closure(std::string_view spec);  // e.g. "cap,cup,minus,singletons" or "none"
std::string closure_name(const Closure& c);

Set close_family(const std::vector<Set>& gens, int n, const Closure& c);  // bitmask over P(U)

struct SearchConfig {
  std::vector<Property> hypotheses;
  std::vector<Property> conclusions;  // a witness violates at least one
  Closure closure;
  int bound = 3;              // largest universe tried
  int exhaustive_max = 3;     // universes above this are sampled
  std::uint64_t seed = 1;
  int samples = 20000;
  std::uint64_t exhaustive_budget = 4'000'000;  // above this, generated families only
  int threads = 1;
};

struct SearchReport {
  bool found = false;
  std::optional<ChoiceFunction> function;
  Property violated;
  CheckResult failure;
  int universe = 0;
  std::uint64_t examined = 0;
  std::vector<std::string> strategy;  // one line per universe size
};

SearchReport search_counterexample(const SearchConfig& cfg);

struct SizeSearchConfig {
  std::vector<SizeRuleSpec> hypotheses;
  SizeRuleSpec conclusion;
  int bound = 3;
  int exhaustive_max = 2;
  std::uint64_t seed = 1;
  int samples = 50000;
};

struct SizeSearchReport {
  bool found = false;
  std::optional<SizeSystem> system;
  CheckResult failure;
  int universe = 0;
  std::uint64_t examined = 0;
  std::vector<std::string> strategy;
};

SizeSearchReport search_size_counterexample(const SizeSearchConfig& cfg);

// A net, two seed sets A ⊆ B and a node visible from A but not from B
// (and not in B).
struct HorizonWitness {
  BlockNet net;
  std::uint32_t smaller = 0, larger = 0;
  NodeId lost = -1;
};

std::optional<HorizonWitness> search_horizon_nonmonotone(int max_nodes);

}  // namespace nmr
