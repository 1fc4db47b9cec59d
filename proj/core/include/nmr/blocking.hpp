#pragma once

#include <set>
#include <string>
#include <vector>

#include "nmr/netcore.hpp"

namespace nmr {

using BlockNet = Diagram;

struct Horizon {
  std::vector<NodeId> seed;     // sorted
  std::vector<NodeId> visible;  // sorted
};

Horizon horizon(const BlockNet& n, const std::vector<NodeId>& seed);
Horizon horizon(const BlockNet& n, const std::vector<std::string>& seed);

// Bitmask form for exhaustive sweeps over nets with at most 32 nodes.
std::uint32_t horizon_mask(const BlockNet& n, std::uint32_t seed);

}  // namespace nmr
