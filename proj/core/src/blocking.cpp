#include "nmr/blocking.hpp"

#include <algorithm>

#include "nmr/error.hpp"

namespace nmr {

std::uint32_t horizon_mask(const BlockNet& n, std::uint32_t seed) {
  if (n.size() > 32) throw Error(ErrorKind::InvalidArgument, "horizon_mask needs at most 32 nodes");
  std::uint32_t vis = seed;
  for (NodeId x : n.topo_order()) {
    if ((vis >> x) & 1u) continue;
    bool support = false, blocked = false;
    for (int a : n.in(x)) {
      const Arrow& ar = n.arrows()[a];
      if (!((vis >> ar.source) & 1u)) continue;
      (ar.polarity == Polarity::Positive ? support : blocked) = true;
    }
    if (support && !blocked) vis |= 1u << x;
  }
  return vis;
}

Horizon horizon(const BlockNet& n, const std::vector<NodeId>& seed) {
  Horizon h;
  std::vector<char> vis(n.size(), 0);
  for (NodeId s : seed) {
    if (s < 0 || s >= n.size()) throw Error(ErrorKind::UnknownNode, "seed out of range");
    vis[s] = 1;
  }
  for (NodeId x : n.topo_order()) {
    if (vis[x]) continue;
    bool support = false, blocked = false;
    for (int a : n.in(x)) {
      const Arrow& ar = n.arrows()[a];
      if (!vis[ar.source]) continue;
      (ar.polarity == Polarity::Positive ? support : blocked) = true;
    }
    vis[x] = support && !blocked;
  }
  for (NodeId x = 0; x < n.size(); ++x) {
    if (vis[x]) h.visible.push_back(x);
  }
  h.seed = seed;
  std::sort(h.seed.begin(), h.seed.end());
  h.seed.erase(std::unique(h.seed.begin(), h.seed.end()), h.seed.end());
  return h;
}

Horizon horizon(const BlockNet& n, const std::vector<std::string>& seed) {
  std::vector<NodeId> ids;
  for (const std::string& s : seed) ids.push_back(n.id(s));
  return horizon(n, ids);
}

}  // namespace nmr
