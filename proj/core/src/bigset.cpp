#include <algorithm>

#include "nmr/inference.hpp"

namespace nmr {

// Saturation over symbolic judgments.  Node extensions are never
// materialised: a judgment names the intersected classes and the reference
// class, and the only facts consulted are earlier judgments b(Y,Y') with
// sign `in`.
BigsetResult bigset_derive(const Diagram& g, PlugIn plugin) {
  int n = g.size();
  BigsetResult res;
  // in_big[X][Y]: X ∩ Y ∈ b(X,Y) has been derived
  std::vector<std::vector<char>> in_big(n, std::vector<char>(n, 0));

  for (const Arrow& a : g.arrows())
    res.judgments.push_back({{a.source}, a.polarity == Polarity::Negative, a.target, Strength::BIG,
                             a.polarity == Polarity::Positive ? Membership::In : Membership::Out});

  struct Source {
    NodeId cls;
    Membership sign;
  };

  for (NodeId z : g.topo_order()) {
    for (NodeId x = 0; x < n; ++x) {
      if (x == z) continue;
      // reference classes: x itself and every class accessible from x that
      // carries a BIG judgment about z
      std::vector<Source> refs;
      for (int a : g.in(z)) {
        const Arrow& ar = g.arrows()[a];
        if (ar.source == x || in_big[x][ar.source])
          refs.push_back({ar.source, ar.polarity == Polarity::Positive ? Membership::In : Membership::Out});
      }
      if (refs.empty()) continue;
      auto more_specific = [&](NodeId y, NodeId y2) {
        return y == x ? y2 != x : (y != y2 && in_big[y][y2]);
      };
      std::vector<Source> kept;
      for (const Source& cand : refs) {
        bool eliminated = std::any_of(refs.begin(), refs.end(), [&](const Source& other) {
          if (!more_specific(other.cls, cand.cls)) return false;
          return plugin == PlugIn::P21 || other.sign != cand.sign;
        });
        if (!eliminated) kept.push_back(cand);
      }
      if (kept.empty()) continue;
      Membership sign = kept.front().sign;
      if (!std::all_of(kept.begin(), kept.end(), [&](const Source& s) { return s.sign == sign; })) continue;

      BigJudgment big;
      for (const Source& s : kept) big.subject.push_back(s.cls);
      std::sort(big.subject.begin(), big.subject.end());
      big.complement = sign == Membership::Out;
      big.reference = z;
      big.strength = Strength::BIG;
      big.sign = sign;
      bool direct = kept.size() == 1 && kept.front().cls == x;
      if (!direct) res.judgments.push_back(big);

      BigJudgment small{{x}, sign == Membership::Out, z, direct ? Strength::BIG : Strength::Big, sign};
      res.judgments.push_back(small);
      res.conclusions.emplace_back(x, z, sign);
      if (sign == Membership::In) in_big[x][z] = 1;
    }
  }
  std::sort(res.conclusions.begin(), res.conclusions.end(), [&](const auto& a, const auto& b) {
    return std::tie(g.name(std::get<0>(a)), g.name(std::get<1>(a))) <
           std::tie(g.name(std::get<0>(b)), g.name(std::get<1>(b)));
  });
  std::sort(res.judgments.begin(), res.judgments.end());
  res.judgments.erase(std::unique(res.judgments.begin(), res.judgments.end()), res.judgments.end());
  return res;
}

std::vector<std::tuple<NodeId, NodeId, Membership>> bigset_conclusions(const Diagram& g) {
  return bigset_derive(g).conclusions;
}

}  // namespace nmr
