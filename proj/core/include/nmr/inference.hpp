#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "nmr/netcore.hpp"

namespace nmr {

enum class Mode { OffPathSplit, OnPath, TotalValidity, Extensions };
enum class Verdict { Positive, Negative, Undefined };

// Plug-in decision of the specificity step: P22 eliminates a candidate only
// when a more specific candidate contradicts it, P21 whenever one exists.
enum class PlugIn { P22, P21 };

struct InferenceOptions {
  PlugIn plugin = PlugIn::P22;
};

std::string_view mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view s);
char verdict_char(Verdict v);

struct ValidSet {
  Diagram diagram;
  Mode mode = Mode::OffPathSplit;
  std::vector<Path> paths;  // sorted

  bool contains(const Path& p) const;
  std::vector<Path> from(NodeId origin) const;
  Verdict verdict(NodeId x, NodeId y) const;
  bool operator==(const ValidSet& o) const { return mode == o.mode && paths == o.paths; }
};

ValidSet valid_paths(const Diagram& g, Mode mode, InferenceOptions opt = {});
Verdict conclude(const Diagram& g, NodeId x, NodeId y, Mode mode, InferenceOptions opt = {});
Verdict conclude(const Diagram& g, std::string_view x, std::string_view y, Mode mode,
                 InferenceOptions opt = {});
std::vector<ValidSet> extensions(const Diagram& g, InferenceOptions opt = {});

// Every ordered pair (x,y), x != y, with its verdict.
struct PairVerdict {
  NodeId x;
  NodeId y;
  Verdict verdict;
};
std::vector<PairVerdict> all_conclusions(const Diagram& g, Mode mode, InferenceOptions opt = {});

// Invariant checks used by tests and the CLI's self-checks.
bool initial_segment_closed(const ValidSet& v);
bool all_potential(const ValidSet& v);

enum class Strength { Big, BIG };
enum class Membership { In, Out };

// b(X,Z) / B(X,Z) judgment.  `subject` lists the intersected node extensions;
// `complement` marks the complement of the reference class (X ∩ ∁Z).
struct BigJudgment {
  std::vector<NodeId> subject;
  bool complement = false;
  NodeId reference = 0;
  Strength strength = Strength::Big;
  Membership sign = Membership::In;
  auto operator<=>(const BigJudgment&) const = default;
};

struct BigsetResult {
  std::vector<std::tuple<NodeId, NodeId, Membership>> conclusions;  // sorted by names
  std::vector<BigJudgment> judgments;                                // derivation log
};

BigsetResult bigset_derive(const Diagram& g, PlugIn plugin = PlugIn::P22);
std::vector<std::tuple<NodeId, NodeId, Membership>> bigset_conclusions(const Diagram& g);

}  // namespace nmr
