#include "nmr/inference.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "nmr/error.hpp"

namespace nmr {

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::OffPathSplit: return "split";
    case Mode::OnPath: return "onpath";
    case Mode::TotalValidity: return "total";
    case Mode::Extensions: return "extensions";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "split") return Mode::OffPathSplit;
  if (s == "onpath") return Mode::OnPath;
  if (s == "total") return Mode::TotalValidity;
  if (s == "extensions") return Mode::Extensions;
  return std::nullopt;
}

char verdict_char(Verdict v) {
  switch (v) {
    case Verdict::Positive: return '+';
    case Verdict::Negative: return '-';
    case Verdict::Undefined: return '?';
  }
  return '?';
}

bool ValidSet::contains(const Path& p) const {
  return std::binary_search(paths.begin(), paths.end(), p);
}

std::vector<Path> ValidSet::from(NodeId origin) const {
  std::vector<Path> out;
  for (const Path& p : paths)
    if (p.origin == origin) out.push_back(p);
  return out;
}

Verdict ValidSet::verdict(NodeId x, NodeId y) const {
  bool pos = false, neg = false;
  for (const Path& p : paths) {
    if (p.origin != x || diagram.endpoint(p) != y) continue;
    (diagram.sign(p) == Polarity::Positive ? pos : neg) = true;
  }
  if (pos && neg) throw std::logic_error("valid paths of both signs for one pair");
  return pos ? Verdict::Positive : neg ? Verdict::Negative : Verdict::Undefined;
}

namespace {

using ChoiceMap = std::map<std::pair<NodeId, NodeId>, Polarity>;

// Modes whose validity of a step into y depends only on (origin, arrow):
// split preclusion, total-validity preclusion, and extensions (split based).
class UniformEngine {
 public:
  UniformEngine(const Diagram& g, Mode mode, PlugIn plugin, const ChoiceMap* choices)
      : g_(g), mode_(mode), plugin_(plugin), choices_(choices) {
    int n = g.size(), m = static_cast<int>(g.arrows().size());
    step_.assign(n, std::vector<signed char>(m, kUnknown));
    pos_.assign(n, std::vector<signed char>(n, kUnknown));
  }

  bool step(NodeId x, int a) {
    signed char& memo = step_[x][a];
    if (memo == kBusy) throw std::logic_error("validity recursion is not well founded");
    if (memo != kUnknown) return memo;
    memo = kBusy;
    bool r = compute_step(x, a);
    step_[x][a] = r;
    return r;
  }

  bool pos(NodeId x, NodeId y) {
    if (x == y) return false;
    signed char& memo = pos_[x][y];
    if (memo == kBusy) throw std::logic_error("validity recursion is not well founded");
    if (memo != kUnknown) return memo;
    memo = kBusy;
    bool r = false;
    for (int a : g_.in(y)) {
      const Arrow& ar = g_.arrows()[a];
      if (ar.polarity == Polarity::Positive && step(x, a)) {
        r = true;
        break;
      }
    }
    pos_[x][y] = r;
    return r;
  }

  bool neg(NodeId x, NodeId y) {
    for (int a : g_.in(y))
      if (g_.arrows()[a].polarity == Polarity::Negative && step(x, a)) return true;
    return false;
  }

  const std::set<std::pair<NodeId, NodeId>>& open_conflicts() const { return open_; }

 private:
  static constexpr signed char kUnknown = -1;
  static constexpr signed char kBusy = -2;

  bool candidate(NodeId x, NodeId u) { return u == x || pos(x, u); }

  // Valid positive path from x passing through z and ending in w, using only
  // steps valid for origin x.
  bool reach_total(NodeId x, NodeId z, NodeId w) {
    if (z == x) return pos(x, w);
    if (!pos(x, z)) return false;
    std::vector<char> seen(g_.size(), 0);
    std::vector<NodeId> todo{z};
    seen[z] = 1;
    while (!todo.empty()) {
      NodeId v = todo.back();
      todo.pop_back();
      for (int a : g_.out(v)) {
        const Arrow& ar = g_.arrows()[a];
        if (ar.polarity != Polarity::Positive || seen[ar.target]) continue;
        if (g_.topo_rank(ar.target) > g_.topo_rank(w)) continue;
        if (!step(x, a)) continue;
        if (ar.target == w) return true;
        seen[ar.target] = 1;
        todo.push_back(ar.target);
      }
    }
    return false;
  }

  // Is the candidate (w -> y, sign s) reached from x defeated by a more
  // specific source z with an arrow into y?
  bool precluded(NodeId x, NodeId w, NodeId y, Polarity s) {
    if (w == x) return false;
    for (int b : g_.in(y)) {
      const Arrow& zb = g_.arrows()[b];
      NodeId z = zb.source;
      if (z == w) continue;
      if (plugin_ == PlugIn::P22 && zb.polarity == s) continue;
      if (mode_ == Mode::TotalValidity) {
        if (reach_total(x, z, w)) return true;
      } else {
        if (candidate(x, z) && pos(z, w)) return true;
      }
    }
    return false;
  }

  bool unprecluded(NodeId x, NodeId y, Polarity s) {
    for (int b : g_.in(y)) {
      const Arrow& vb = g_.arrows()[b];
      if (vb.polarity != s || !candidate(x, vb.source)) continue;
      if (!precluded(x, vb.source, y, s)) return true;
    }
    return false;
  }

  bool compute_step(NodeId x, int a) {
    const Arrow& ar = g_.arrows()[a];
    NodeId u = ar.source, y = ar.target;
    if (u == x) return true;
    if (!pos(x, u)) return false;
    if (precluded(x, u, y, ar.polarity)) return false;
    if (plugin_ == PlugIn::P21) {
      // the surviving candidates must all carry this sign
      for (int b : g_.in(y)) {
        const Arrow& vb = g_.arrows()[b];
        if (b == a || !candidate(x, vb.source)) continue;
        if (vb.polarity != ar.polarity && !precluded(x, vb.source, y, vb.polarity)) return false;
      }
      return true;
    }
    bool opposite = unprecluded(x, y, flip(ar.polarity));
    if (!opposite) return true;
    if (mode_ != Mode::Extensions) return false;
    auto it = choices_ ? choices_->find({x, y}) : ChoiceMap::const_iterator{};
    if (choices_ && it != choices_->end()) return it->second == ar.polarity;
    open_.insert({x, y});
    return false;
  }

  const Diagram& g_;
  Mode mode_;
  PlugIn plugin_;
  const ChoiceMap* choices_;
  std::vector<std::vector<signed char>> step_;
  std::vector<std::vector<signed char>> pos_;
  std::set<std::pair<NodeId, NodeId>> open_;
};

// On-path preclusion: the defeating source must lie on the path itself, so
// validity is decided per path rather than per arrow.
class OnPathEngine {
 public:
  OnPathEngine(const Diagram& g, PlugIn plugin) : g_(g), plugin_(plugin) {
    memo_.assign(g.size(), std::vector<std::optional<std::vector<Path>>>(g.size()));
  }

  // valid paths from x to y of either sign
  const std::vector<Path>& valid_to(NodeId x, NodeId y) {
    auto& slot = memo_[x][y];
    if (slot) return *slot;
    std::vector<Path> out;
    if (x != y) {
      for (int a : g_.in(y)) {
        const Arrow& ar = g_.arrows()[a];
        if (ar.source == x) {
          out.push_back({x, {a}, classify(g_, {a})});
          continue;
        }
        for (const Path& pi : valid_to(x, ar.source)) {
          if (g_.sign(pi) != Polarity::Positive) continue;
          if (!accept(x, pi, a)) continue;
          Path sigma = pi;
          sigma.arrows.push_back(a);
          sigma.kind = classify(g_, sigma.arrows);
          out.push_back(std::move(sigma));
        }
      }
    }
    std::sort(out.begin(), out.end());
    slot = std::move(out);
    return *slot;
  }

 private:
  bool on_path_source(const Path& pi, NodeId y, Polarity s, NodeId skip) {
    for (NodeId z : g_.path_nodes(pi)) {
      if (z == skip) continue;
      for (int b : g_.in(y)) {
        const Arrow& zb = g_.arrows()[b];
        if (zb.source != z) continue;
        if (plugin_ == PlugIn::P21 || zb.polarity == s) return true;
      }
    }
    return false;
  }

  bool accept(NodeId x, const Path& pi, int a) {
    const Arrow& ar = g_.arrows()[a];
    NodeId y = ar.target, w = ar.source;
    Polarity s = ar.polarity;
    if (on_path_source(pi, y, flip(s), w)) return false;
    for (int b : g_.in(y)) {
      const Arrow& vb = g_.arrows()[b];
      if (b == a || vb.polarity == s) continue;
      NodeId v = vb.source;
      if (v == x) return false;  // opposite direct link
      for (const Path& tau : valid_to(x, v)) {
        if (g_.sign(tau) != Polarity::Positive) continue;
        if (!on_path_source(tau, y, s, v)) return false;
      }
    }
    return true;
  }

  const Diagram& g_;
  PlugIn plugin_;
  std::vector<std::vector<std::optional<std::vector<Path>>>> memo_;
};

void collect_uniform(const Diagram& g, UniformEngine& e, NodeId x, NodeId at,
                     std::vector<int>& stack, std::vector<Path>& out) {
  for (int a : g.out(at)) {
    if (!e.step(x, a)) continue;
    stack.push_back(a);
    out.push_back({x, stack, classify(g, stack)});
    if (g.arrows()[a].polarity == Polarity::Positive) collect_uniform(g, e, x, g.arrows()[a].target, stack, out);
    stack.pop_back();
  }
}

ValidSet uniform_set(const Diagram& g, Mode mode, PlugIn plugin, const ChoiceMap* choices,
                     std::set<std::pair<NodeId, NodeId>>* open) {
  UniformEngine e(g, mode, plugin, choices);
  ValidSet vs{g, mode, {}};
  // decide every arrow for every origin first so open conflicts are complete
  for (NodeId x = 0; x < g.size(); ++x)
    for (int a = 0; a < static_cast<int>(g.arrows().size()); ++a) e.step(x, a);
  for (NodeId x = 0; x < g.size(); ++x) {
    std::vector<int> stack;
    collect_uniform(g, e, x, x, stack, vs.paths);
  }
  std::sort(vs.paths.begin(), vs.paths.end());
  if (open) *open = e.open_conflicts();
  return vs;
}

}  // namespace

ValidSet valid_paths(const Diagram& g, Mode mode, InferenceOptions opt) {
  if (mode == Mode::Extensions)
    throw Error(ErrorKind::Mode, "valid_paths does not take Extensions; use extensions()");
  if (mode == Mode::OnPath) {
    OnPathEngine e(g, opt.plugin);
    ValidSet vs{g, mode, {}};
    for (NodeId x = 0; x < g.size(); ++x)
      for (NodeId y = 0; y < g.size(); ++y)
        for (const Path& p : e.valid_to(x, y)) vs.paths.push_back(p);
    std::sort(vs.paths.begin(), vs.paths.end());
    return vs;
  }
  return uniform_set(g, mode, opt.plugin, nullptr, nullptr);
}

std::vector<ValidSet> extensions(const Diagram& g, InferenceOptions opt) {
  std::vector<ValidSet> out;
  auto rec = [&](auto&& self, const ChoiceMap& choices) -> void {
    std::set<std::pair<NodeId, NodeId>> open;
    ValidSet vs = uniform_set(g, Mode::Extensions, opt.plugin, &choices, &open);
    if (open.empty()) {
      if (std::find(out.begin(), out.end(), vs) == out.end()) out.push_back(std::move(vs));
      return;
    }
    auto first = *std::min_element(open.begin(), open.end(), [&](auto a, auto b) {
      return std::tie(g.name(a.second), g.name(a.first)) < std::tie(g.name(b.second), g.name(b.first));
    });
    for (Polarity p : {Polarity::Positive, Polarity::Negative}) {
      ChoiceMap next = choices;
      next[first] = p;
      self(self, next);
    }
  };
  rec(rec, {});
  return out;
}

Verdict conclude(const Diagram& g, NodeId x, NodeId y, Mode mode, InferenceOptions opt) {
  if (x < 0 || x >= g.size() || y < 0 || y >= g.size())
    throw Error(ErrorKind::UnknownNode, "node id out of range");
  if (x == y) return Verdict::Undefined;
  if (mode == Mode::Extensions) {
    std::optional<Verdict> agreed;
    for (const ValidSet& e : extensions(g, opt)) {
      Verdict v = e.verdict(x, y);
      if (agreed && *agreed != v) return Verdict::Undefined;
      agreed = v;
    }
    return agreed.value_or(Verdict::Undefined);
  }
  if (mode == Mode::OnPath) {
    OnPathEngine e(g, opt.plugin);
    ValidSet vs{g, mode, e.valid_to(x, y)};
    return vs.verdict(x, y);
  }
  UniformEngine e(g, mode, opt.plugin, nullptr);
  bool p = e.pos(x, y), n = e.neg(x, y);
  if (p && n) throw std::logic_error("valid paths of both signs for one pair");
  return p ? Verdict::Positive : n ? Verdict::Negative : Verdict::Undefined;
}

Verdict conclude(const Diagram& g, std::string_view x, std::string_view y, Mode mode,
                 InferenceOptions opt) {
  return conclude(g, g.id(x), g.id(y), mode, opt);
}

std::vector<PairVerdict> all_conclusions(const Diagram& g, Mode mode, InferenceOptions opt) {
  std::vector<PairVerdict> out;
  if (mode == Mode::Extensions) {
    auto exts = extensions(g, opt);
    for (NodeId x = 0; x < g.size(); ++x)
      for (NodeId y = 0; y < g.size(); ++y) {
        if (x == y) continue;
        std::optional<Verdict> agreed;
        bool split = false;
        for (const ValidSet& e : exts) {
          Verdict v = e.verdict(x, y);
          if (agreed && *agreed != v) split = true;
          agreed = v;
        }
        out.push_back({x, y, split ? Verdict::Undefined : agreed.value_or(Verdict::Undefined)});
      }
    return out;
  }
  ValidSet vs = valid_paths(g, mode, opt);
  for (NodeId x = 0; x < g.size(); ++x)
    for (NodeId y = 0; y < g.size(); ++y)
      if (x != y) out.push_back({x, y, vs.verdict(x, y)});
  return out;
}

bool initial_segment_closed(const ValidSet& v) {
  for (const Path& p : v.paths)
    for (std::size_t k = 1; k < p.arrows.size(); ++k) {
      Path pre{p.origin, std::vector<int>(p.arrows.begin(), p.arrows.begin() + k), PathKind::PotentialPositive};
      if (!v.contains(pre)) return false;
    }
  return true;
}

bool all_potential(const ValidSet& v) {
  for (const Path& p : v.paths) {
    if (!kind_consistent(v.diagram, p)) return false;
    if (p.kind == PathKind::Generalized) return false;
  }
  return true;
}

}  // namespace nmr
