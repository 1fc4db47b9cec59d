#include <map>
#include <set>

#include "nmr/formats.hpp"

namespace nmr {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* kHeader = "digraph G {\n  rankdir=BT;\n";
const char* kNegative = "color=red, arrowhead=tee";

std::string arrow_style(Polarity p) { return p == Polarity::Negative ? kNegative : ""; }

std::string attrs(const std::string& a) { return a.empty() ? "" : " [" + a + "]"; }

std::string join_attrs(std::string a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + ", " + b;
}

}  // namespace

std::string export_dot(const Diagram& g) {
  std::string out = kHeader;
  for (const auto& n : g.nodes()) out += "  " + quote(n) + ";\n";
  for (const Arrow& a : g.arrows())
    out += "  " + quote(g.name(a.source)) + " -> " + quote(g.name(a.target)) + attrs(arrow_style(a.polarity)) + ";\n";
  return out + "}\n";
}

std::string export_dot(const Diagram& g, const ValidSet& v) {
  std::set<int> used;
  for (const Path& p : v.paths) used.insert(p.arrows.begin(), p.arrows.end());
  std::string out = kHeader;
  for (const auto& n : g.nodes()) out += "  " + quote(n) + ";\n";
  for (std::size_t i = 0; i < g.arrows().size(); ++i) {
    const Arrow& a = g.arrows()[i];
    std::string st = used.count(static_cast<int>(i)) ? "style=bold" : "style=dashed";
    out += "  " + quote(g.name(a.source)) + " -> " + quote(g.name(a.target)) +
           attrs(join_attrs(st, arrow_style(a.polarity))) + ";\n";
  }
  return out + "}\n";
}

// Arrows touched by a double arrow are split at a point node "m<i>"; the
// double arrow runs between midpoints.
std::string export_dot(const ReactiveDiagram& r) {
  const Diagram& g = r.base;
  std::set<int> split;
  for (const auto& d : r.doubles) {
    split.insert(d.trigger);
    split.insert(d.blocked);
  }
  std::string out = kHeader;
  for (NodeId n = 0; n < g.size(); ++n)
    out += "  " + quote(g.name(n)) + (n == r.origin ? " [shape=doublecircle]" : "") + ";\n";
  for (std::size_t i = 0; i < g.arrows().size(); ++i) {
    const Arrow& a = g.arrows()[i];
    std::string s = quote(g.name(a.source)), t = quote(g.name(a.target));
    if (!split.count(static_cast<int>(i))) {
      out += "  " + s + " -> " + t + attrs(arrow_style(a.polarity)) + ";\n";
      continue;
    }
    std::string m = quote("m" + std::to_string(i));
    out += "  " + m + " [shape=point];\n";
    out += "  " + s + " -> " + m + " [arrowhead=none" + (a.polarity == Polarity::Negative ? ", color=red" : "") + "];\n";
    out += "  " + m + " -> " + t + attrs(arrow_style(a.polarity)) + ";\n";
  }
  for (const auto& d : r.doubles)
    out += "  " + quote("m" + std::to_string(d.trigger)) + " -> " + quote("m" + std::to_string(d.blocked)) +
           " [style=bold, color=blue, arrowhead=odot];\n";
  return out + "}\n";
}

std::string export_dot(const PrefStructure& s, const RankedPartition* blocks) {
  std::string out = kHeader;
  if (blocks) {
    for (std::size_t b = 0; b < blocks->blocks.size(); ++b) {
      out += "  subgraph " + quote("cluster_block" + std::to_string(b)) + " {\n    rank=same;\n";
      for (std::size_t n = 0; n < s.nodes.size(); ++n)
        if (has(blocks->blocks[b], s.nodes[n].element)) out += "    " + quote(s.label(static_cast<int>(n))) + ";\n";
      out += "  }\n";
    }
  }
  for (std::size_t n = 0; n < s.nodes.size(); ++n) out += "  " + quote(s.label(static_cast<int>(n))) + ";\n";
  // lower elements are drawn at the bottom
  for (auto [lo, up] : s.rel) out += "  " + quote(s.label(lo)) + " -> " + quote(s.label(up)) + ";\n";
  return out + "}\n";
}

std::string export_dot(const GenStructure& s) {
  std::set<int> attacked;
  for (const auto& a : s.arrows)
    if (!a.to_node) attacked.insert(a.target);
  std::string out = kHeader;
  for (std::size_t n = 0; n < s.nodes.size(); ++n) out += "  " + quote(s.node_label(static_cast<int>(n))) + ";\n";
  auto mid = [&](int i) { return quote("mid_" + s.arrows[i].id); };
  for (std::size_t i = 0; i < s.arrows.size(); ++i) {
    const auto& a = s.arrows[i];
    std::string from = quote(s.node_label(a.origin));
    std::string to = a.to_node ? quote(s.node_label(a.target)) : mid(a.target);
    std::string label = "label=" + quote(a.id + a.sign);
    std::string extra = a.sign == "-" ? std::string(kNegative) : "";
    if (a.level > 1) extra = join_attrs(extra, "style=dashed");
    if (!attacked.count(static_cast<int>(i))) {
      out += "  " + from + " -> " + to + attrs(join_attrs(label, extra)) + ";\n";
      continue;
    }
    out += "  " + mid(static_cast<int>(i)) + " [shape=point];\n";
    out += "  " + from + " -> " + mid(static_cast<int>(i)) + attrs(join_attrs(label + ", arrowhead=none", extra)) + ";\n";
    out += "  " + mid(static_cast<int>(i)) + " -> " + to + attrs(extra) + ";\n";
  }
  return out + "}\n";
}

}  // namespace nmr
