#pragma once

#include <deque>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mapf/graph.hpp"
#include "mapf/schedule.hpp"
#include "mapf/shortest_paths.hpp"
#include "mapf/types.hpp"

namespace mapf {

enum class AgentStatus { Moving, Waiting, Done };

// An agent's dynamic navigation state. The tree it follows is always the one
// of its agenda head, so exchanging agendas exchanges trees implicitly.
struct AgentState {
  AgentId id = 0;
  NodeId position = -1;
  std::deque<NodeId> agenda;
  AgentStatus status = AgentStatus::Moving;
  std::optional<NodeId> intended_next;

  bool done() const { return agenda.empty(); }
  NodeId head() const { return agenda.front(); }
};

enum class ConflictKind { EdgeSwap, NodeHeadOn, NodeSameDirection, NodeMulti, GoalBlock };
enum class Resolution { AgendaSwap, Zip, LocalAssignment, Cuckoo, Wait };

struct ConflictEvent {
  int time = 0;
  ConflictKind kind = ConflictKind::NodeSameDirection;
  std::vector<AgentId> agents;
  Resolution resolution = Resolution::Wait;
};

// Who blocks whom: blocker[i] is the agent occupying agent i's intended node
// (-1 when the node is free or i has no intent). Wait propagation traverses
// the inverted edges; cycles are rotations and commit as a unit.
struct DependencyGraph {
  std::vector<AgentId> blocker;

  static DependencyGraph build(const std::vector<AgentState>& agents,
                               const std::unordered_map<NodeId, AgentId>& occupant);
  std::vector<std::vector<AgentId>> followers() const;
};

struct SimOptions {
  std::ostream* trace = nullptr;
  // Coordinates used in trace lines; defaults to (node, 0).
  std::function<std::pair<int, int>(NodeId)> coords;
};

struct SimStats {
  long long timesteps = 0;
  long long potential_conflicts = 0;
  int max_consecutive_waits = 0;
  bool moved_every_step = true;
  long long rescues = 0;
  Cost termination_bound = 0;
};

struct SimResult {
  Schedule schedule;
  std::vector<ConflictEvent> log;
  SimStats stats;
};

// Termination-bound overrun or broken precondition; carries the partial
// schedule so failures are debuggable rather than silently truncated.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& msg, Schedule partial = {})
      : std::runtime_error(msg), partial_schedule(std::move(partial)) {}
  Schedule partial_schedule;
};

// Exchanges goal agendas (and with them the shortest-path trees being
// followed); used for edge conflicts and opposite-direction node conflicts.
void swap_agendas(AgentState& a, AgentState& b);

// Pushes a finished agent off its goal: the resident inherits the incomer's
// agenda and moves on, the incomer's agenda becomes the re-opened goal it is
// about to enter.
void cuckoo_exchange(AgentState& resident, AgentState& incomer);

std::vector<AgentState> make_agents(const std::vector<NodeId>& starts,
                                    const std::vector<std::vector<NodeId>>& agendas);

// Runs the discrete simulation until every agent is Done. The returned
// schedule is collision-free (vertex + swap) and within the termination
// bound 2 * (sum of initial agenda path lengths) + k * n.
SimResult simulate(const Graph& graph, TreeStore& trees, std::vector<AgentState> agents,
                   const SimOptions& options = {});

// Number of conflict-resolution events a full simulation of these agendas
// logs (one of the two "conflicts" readings; the other is in SimStats).
long long count_potential_conflicts(const Graph& graph, TreeStore& trees,
                                    std::vector<AgentState> agents);

}  // namespace mapf
