#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nmr/inference.hpp"
#include "nmr/netcore.hpp"

namespace nmr {

// Traversing `trigger` switches `blocked` off for the rest of the walk.
struct DoubleArrow {
  int trigger;
  int blocked;
  auto operator<=>(const DoubleArrow&) const = default;
};

struct ReactiveDiagram {
  Diagram base;
  NodeId origin = 0;
  std::vector<DoubleArrow> doubles;  // sorted, unique
  bool operator==(const ReactiveDiagram& o) const {
    return base == o.base && origin == o.origin && doubles == o.doubles;
  }
};

ReactiveDiagram compile(const Diagram& g, NodeId origin);
ReactiveDiagram recompile_fixpoint(const ReactiveDiagram& r);

// Every nonempty path walkable from the origin without using a blocked arrow.
std::vector<Path> traverse(const ReactiveDiagram& r);

// Dropping all doubles gives back the base diagram untouched.
Diagram erase_doubles(const ReactiveDiagram& r);

enum class PairLabel { Star, PPlus, PMinus, PBoth, VPlus, VMinus };
const char* label_name(PairLabel l);

using LabelMap = std::map<std::pair<NodeId, NodeId>, PairLabel>;

struct MemoTrace {
  LabelMap propagated;  // after direct links and potential-path propagation
  LabelMap final;       // after arbitration
};

MemoTrace memo_trace(const Diagram& g);
LabelMap memo_labels(const Diagram& g);

// Arrows leaving a node reached by a valid prefix from x that lie on no valid
// path from x to y.
std::vector<int> signposts(const Diagram& g, NodeId x, NodeId y);

}  // namespace nmr
