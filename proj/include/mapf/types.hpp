#pragma once

#include <cstdint>
#include <limits>

namespace mapf {

using NodeId = int;
using AgentId = int;
using Cost = std::int64_t;

// Sentinel for "unreachable"; arithmetic through saturating_add never wraps.
inline constexpr Cost kInfCost = std::numeric_limits<Cost>::max();

inline bool cost_finite(Cost c) { return c != kInfCost; }

inline Cost saturating_add(Cost a, Cost b) {
  if (a == kInfCost || b == kInfCost) return kInfCost;
  if (a > kInfCost - b) return kInfCost;
  return a + b;
}

}  // namespace mapf
