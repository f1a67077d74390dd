#pragma once

#include <vector>

#include "mapf/types.hpp"

namespace mapf {

// Per-agent node per timestep; row i column t is agent i's position at time
// t. All rows share one length, wait steps repeat the node.
using Schedule = std::vector<std::vector<NodeId>>;

inline int schedule_timesteps(const Schedule& schedule) {
  return schedule.empty() ? 0 : static_cast<int>(schedule.front().size()) - 1;
}

}  // namespace mapf
