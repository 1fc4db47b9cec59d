#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nmr {

enum class Polarity { Positive, Negative };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

using NodeId = int;

struct Arrow {
  NodeId source;
  NodeId target;
  Polarity polarity;
  bool operator==(const Arrow&) const = default;
};

enum class PathKind { Generalized, PotentialPositive, PotentialNegative };

// A chain of arrows from `origin`; arrows are indices into Diagram::arrows().
struct Path {
  NodeId origin = 0;
  std::vector<int> arrows;
  PathKind kind = PathKind::Generalized;
  bool operator==(const Path&) const = default;
  auto operator<=>(const Path& o) const {
    if (auto c = origin <=> o.origin; c != 0) return c;
    return arrows <=> o.arrows;
  }
};

struct RawArrow {
  std::string source;
  std::string target;
  Polarity polarity;
};

// Unchecked node/arrow listing as it comes out of a parser or a fixture.
struct RawDiagram {
  std::vector<std::string> nodes;
  std::vector<RawArrow> arrows;
};

class Diagram {
 public:
  Diagram() = default;

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::string& name(NodeId n) const { return nodes_.at(n); }

  std::optional<NodeId> find(std::string_view name) const;
  NodeId id(std::string_view name) const;  // throws UnknownNode

  const std::vector<int>& out(NodeId n) const { return out_.at(n); }
  const std::vector<int>& in(NodeId n) const { return in_.at(n); }
  const std::vector<NodeId>& topo_order() const { return topo_; }
  int topo_rank(NodeId n) const { return rank_.at(n); }

  std::optional<int> arrow_between(NodeId s, NodeId t) const;
  std::optional<int> find_arrow(NodeId s, NodeId t, Polarity p) const;

  NodeId endpoint(const Path& p) const;
  Polarity sign(const Path& p) const;
  std::vector<NodeId> path_nodes(const Path& p) const;

  std::string arrow_label(int a) const;
  std::string path_label(const Path& p) const;

  RawDiagram raw() const;
  bool operator==(const Diagram& o) const { return nodes_ == o.nodes_ && arrows_ == o.arrows_; }

 private:
  friend Diagram validate_diagram(const RawDiagram& raw);
  std::vector<std::string> nodes_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<NodeId> topo_;
  std::vector<int> rank_;
};

Diagram validate_diagram(const RawDiagram& raw);

// Builds from arrows only; nodes appear in first-mention order.
Diagram diagram_from_arrows(const std::vector<RawArrow>& arrows,
                            const std::vector<std::string>& extra_nodes = {});

PathKind classify(const Diagram& g, const std::vector<int>& arrows);
bool kind_consistent(const Diagram& g, const Path& p);

std::vector<Path> generalized_paths(const Diagram& g, NodeId x, NodeId y);
std::vector<Path> potential_paths(const Diagram& g, NodeId x, NodeId y);
std::vector<Path> generalized_paths(const Diagram& g, std::string_view x, std::string_view y);
std::vector<Path> potential_paths(const Diagram& g, std::string_view x, std::string_view y);

int degree(const Diagram& g, NodeId x, const Path& sigma);

}  // namespace nmr
