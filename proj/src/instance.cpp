#include "mapf/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace mapf {
namespace {

NodeId node_of(const GridGraph& grid, int x, int y, const char* what) {
  if (x < 0 || x >= grid.width || y < 0 || y >= grid.height)
    throw std::invalid_argument(std::string(what) + " coordinate out of bounds");
  NodeId n = grid.node_at(x, y);
  if (n < 0) throw std::invalid_argument(std::string(what) + " lies on a blocked cell");
  return n;
}

void require_distinct(const std::vector<NodeId>& nodes, const char* what) {
  std::unordered_set<NodeId> seen;
  for (NodeId n : nodes)
    if (!seen.insert(n).second)
      throw std::invalid_argument(std::string("duplicate ") + what + " at node " +
                                  std::to_string(n));
}

void require_entries(const std::vector<ScenarioEntry>& entries, int agent_count) {
  if (agent_count < 1) throw std::invalid_argument("agent count must be >= 1");
  if (static_cast<int>(entries.size()) < agent_count)
    throw std::invalid_argument("scenario provides " + std::to_string(entries.size()) +
                                " pairs, need " + std::to_string(agent_count));
}

}  // namespace

Solvability screen_solvability(const Instance& instance) {
  const std::vector<int> label = connected_components(instance.graph);
  Solvability result;
  if (instance.mode == Mode::Regular) {
    for (int i = 0; i < instance.agent_count(); ++i) {
      NodeId goal = instance.goals[instance.fixed_assignment[i]];
      if (label[instance.starts[i]] != label[goal]) result.unreachable_goals.push_back(goal);
    }
  } else {
    std::unordered_set<int> start_labels;
    for (NodeId s : instance.starts) start_labels.insert(label[s]);
    for (NodeId g : instance.goals)
      if (!start_labels.count(label[g])) result.unreachable_goals.push_back(g);
  }
  result.solvable = result.unreachable_goals.empty();
  return result;
}

Instance make_regular_instance(const GridGraph& grid, const std::vector<ScenarioEntry>& entries,
                               int agent_count) {
  require_entries(entries, agent_count);
  Instance inst;
  inst.graph = grid.graph;
  inst.mode = Mode::Regular;
  for (int i = 0; i < agent_count; ++i) {
    inst.starts.push_back(node_of(grid, entries[i].start_x, entries[i].start_y, "start"));
    inst.goals.push_back(node_of(grid, entries[i].goal_x, entries[i].goal_y, "goal"));
    inst.fixed_assignment.push_back(i);
  }
  require_distinct(inst.starts, "start");
  require_distinct(inst.goals, "goal");
  return inst;
}

Instance make_anonymous_instance(const GridGraph& grid, const std::vector<ScenarioEntry>& entries,
                                 int agent_count) {
  Instance inst = make_regular_instance(grid, entries, agent_count);
  inst.mode = Mode::Anonymous;
  inst.fixed_assignment.clear();
  return inst;
}

Instance make_combinatorial_instance(const GridGraph& grid,
                                     const std::vector<ScenarioEntry>& entries, int agent_count,
                                     bool starts_are_goals, bool starts_from_scen) {
  if (agent_count < 1) throw std::invalid_argument("agent count must be >= 1");
  std::vector<NodeId> goal_cells;
  std::unordered_set<NodeId> seen;
  for (const ScenarioEntry& e : entries) {
    NodeId g = node_of(grid, e.goal_x, e.goal_y, "goal");
    if (seen.insert(g).second) goal_cells.push_back(g);
  }

  Instance inst;
  inst.graph = grid.graph;
  inst.mode = Mode::Combinatorial;

  if (starts_from_scen) {
    require_entries(entries, agent_count);
    for (int i = 0; i < agent_count; ++i)
      inst.starts.push_back(node_of(grid, entries[i].start_x, entries[i].start_y, "start"));
    require_distinct(inst.starts, "start");
    inst.goals = goal_cells;
  } else {
    if (static_cast<int>(goal_cells.size()) < agent_count)
      throw std::invalid_argument("scenario provides " + std::to_string(goal_cells.size()) +
                                  " distinct goals, need " + std::to_string(agent_count) +
                                  " start locations");
    inst.starts.assign(goal_cells.begin(), goal_cells.begin() + agent_count);
    if (starts_are_goals)
      inst.goals = goal_cells;
    else
      inst.goals.assign(goal_cells.begin() + agent_count, goal_cells.end());
  }

  if (inst.goal_count() < inst.agent_count())
    throw std::invalid_argument("combinatorial instance needs at least as many goals as agents");
  return inst;
}

}  // namespace mapf
