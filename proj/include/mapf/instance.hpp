#pragma once

#include <vector>

#include "mapf/graph.hpp"
#include "mapf/grid_graph.hpp"
#include "mapf/scenario.hpp"

namespace mapf {

enum class Mode { Regular, Anonymous, Combinatorial };

// Regular and Anonymous require |goals| == |starts|; Combinatorial allows
// more goals than agents. Starts are pairwise distinct, as are goals.
struct Instance {
  Graph graph;
  std::vector<NodeId> starts;
  std::vector<NodeId> goals;
  Mode mode = Mode::Anonymous;
  // Regular mode only: goal index assigned to each agent (identity when
  // built from a scenario, where row i pairs start i with goal i).
  std::vector<int> fixed_assignment;

  int agent_count() const { return static_cast<int>(starts.size()); }
  int goal_count() const { return static_cast<int>(goals.size()); }
};

struct Solvability {
  bool solvable = true;
  std::vector<NodeId> unreachable_goals;
};

// Unsolvable iff some goal lies in a component with no agent start
// (Anonymous/Combinatorial) or outside its assigned agent's component
// (Regular). Runs one component labeling, O(n + e).
Solvability screen_solvability(const Instance& instance);

// Builders from scenario entries; they reject duplicate starts/goals and
// enforce the per-mode cardinality rules. Node ids refer to grid.graph.
Instance make_regular_instance(const GridGraph& grid, const std::vector<ScenarioEntry>& entries,
                               int agent_count);
Instance make_anonymous_instance(const GridGraph& grid, const std::vector<ScenarioEntry>& entries,
                                 int agent_count);

// Combinatorial: goals are all scenario goal cells, deduplicated in file
// order. Agents start at the first k goal cells unless starts_from_scen is
// set; started-on cells are excluded from the goals to visit unless
// starts_are_goals is set.
Instance make_combinatorial_instance(const GridGraph& grid,
                                     const std::vector<ScenarioEntry>& entries, int agent_count,
                                     bool starts_are_goals = false,
                                     bool starts_from_scen = false);

}  // namespace mapf
