#include "mapf/simulation.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>

#include "mapf/assignment.hpp"

namespace mapf {

void swap_agendas(AgentState& a, AgentState& b) { std::swap(a.agenda, b.agenda); }

void cuckoo_exchange(AgentState& resident, AgentState& incomer) {
  NodeId reopened_goal = resident.position;
  resident.agenda = std::move(incomer.agenda);
  incomer.agenda.clear();
  incomer.agenda.push_back(reopened_goal);
}

DependencyGraph DependencyGraph::build(const std::vector<AgentState>& agents,
                                       const std::unordered_map<NodeId, AgentId>& occupant) {
  DependencyGraph deps;
  deps.blocker.assign(agents.size(), -1);
  for (const AgentState& a : agents) {
    if (!a.intended_next) continue;
    auto it = occupant.find(*a.intended_next);
    if (it != occupant.end()) deps.blocker[a.id] = it->second;
  }
  return deps;
}

std::vector<std::vector<AgentId>> DependencyGraph::followers() const {
  std::vector<std::vector<AgentId>> inv(blocker.size());
  for (size_t i = 0; i < blocker.size(); ++i)
    if (blocker[i] >= 0) inv[blocker[i]].push_back(static_cast<AgentId>(i));
  return inv;
}

std::vector<AgentState> make_agents(const std::vector<NodeId>& starts,
                                    const std::vector<std::vector<NodeId>>& agendas) {
  if (starts.size() != agendas.size())
    throw std::invalid_argument("starts and agendas must have matching sizes");
  std::vector<AgentState> agents(starts.size());
  for (size_t i = 0; i < starts.size(); ++i) {
    agents[i].id = static_cast<AgentId>(i);
    agents[i].position = starts[i];
    agents[i].agenda.assign(agendas[i].begin(), agendas[i].end());
  }
  return agents;
}

namespace {

enum class StepTag { None, Cuckoo, Swap, Zip, Wait, Move };

class Simulator {
 public:
  Simulator(const Graph& graph, TreeStore& trees, std::vector<AgentState> agents,
            const SimOptions& options)
      : graph_(graph), trees_(trees), agents_(std::move(agents)), options_(options) {}

  SimResult run();

 private:
  // -- bookkeeping ----------------------------------------------------------
  bool all_done() const;
  void settle(AgentState& a);  // claim reached heads, refresh intended_next
  Cost initial_path_length() const;
  void log_event(ConflictKind kind, Resolution res, std::initializer_list<AgentId> ids);
  void log_event(ConflictKind kind, Resolution res, const std::vector<AgentId>& ids);
  AgentId occupant_of(NodeId node) const;
  AgentId alternation_winner(std::unordered_map<long long, AgentId>& table, long long key,
                             const std::vector<AgentId>& contenders);
  bool opposing(const AgentState& a, const AgentState& b) const;
  std::vector<std::vector<AgentId>> same_target_groups() const;

  // -- per-step phases ------------------------------------------------------
  void census_potential_conflicts();
  bool sweep_cuckoo();
  bool sweep_edge();
  bool sweep_crossing();
  bool sweep_headon();
  bool sweep_multi();
  void stabilize();
  bool commit();  // returns whether any agent moved
  void write_trace();

  const Graph& graph_;
  TreeStore& trees_;
  std::vector<AgentState> agents_;
  SimOptions options_;

  std::unordered_map<NodeId, AgentId> occupant_;
  std::unordered_map<long long, AgentId> node_alternation_;
  std::unordered_map<long long, AgentId> crossing_alternation_;
  std::unordered_set<long long> crossing_swapped_;  // per step, pair key
  std::unordered_set<NodeId> multi_resolved_;       // per step
  std::vector<StepTag> tags_;
  std::vector<char> moved_;
  std::vector<int> consecutive_waits_;

  Schedule schedule_;
  std::vector<ConflictEvent> log_;
  SimStats stats_;
  int time_ = 0;
};

bool Simulator::all_done() const {
  return std::all_of(agents_.begin(), agents_.end(),
                     [](const AgentState& a) { return a.done(); });
}

void Simulator::settle(AgentState& a) {
  while (!a.agenda.empty() && a.agenda.front() == a.position) a.agenda.pop_front();
  if (a.done()) {
    a.status = AgentStatus::Done;
    a.intended_next.reset();
  } else {
    a.intended_next = next_hop(trees_.tree(a.head()), a.position);
  }
}

Cost Simulator::initial_path_length() const {
  Cost total = 0;
  for (const AgentState& a : agents_) {
    NodeId at = a.position;
    for (NodeId goal : a.agenda) {
      Cost d = trees_.tree(goal).dist[at];
      if (d == kInfCost)
        throw SimulationError("agenda head " + std::to_string(goal) +
                              " unreachable for agent " + std::to_string(a.id));
      total = saturating_add(total, d);
      at = goal;
    }
  }
  return total;
}

void Simulator::log_event(ConflictKind kind, Resolution res, std::initializer_list<AgentId> ids) {
  log_event(kind, res, std::vector<AgentId>(ids));
}

void Simulator::log_event(ConflictKind kind, Resolution res, const std::vector<AgentId>& ids) {
  log_.push_back({time_, kind, ids, res});
}

AgentId Simulator::occupant_of(NodeId node) const {
  auto it = occupant_.find(node);
  return it == occupant_.end() ? -1 : it->second;
}

// Round-robin by id: the winner is the smallest contender id strictly above
// the previous winner, wrapping around. A contender can lose at most k-1
// consecutive rounds at one key, which bounds waiting (no starvation).
AgentId Simulator::alternation_winner(std::unordered_map<long long, AgentId>& table,
                                      long long key, const std::vector<AgentId>& contenders) {
  AgentId last = -1;
  if (auto it = table.find(key); it != table.end()) last = it->second;
  AgentId winner = -1;
  for (AgentId id : contenders)
    if (id > last && (winner == -1 || id < winner)) winner = id;
  if (winner == -1) winner = *std::min_element(contenders.begin(), contenders.end());
  table[key] = winner;
  return winner;
}

// Both agents' goals lie beyond the other agent: swapping agendas strictly
// shrinks the total remaining distance, so repeated swaps terminate.
bool Simulator::opposing(const AgentState& a, const AgentState& b) const {
  const ShortestPathTree& tree_a = trees_.tree(a.head());
  const ShortestPathTree& tree_b = trees_.tree(b.head());
  return tree_a.dist[b.position] < tree_a.dist[a.position] &&
         tree_b.dist[a.position] < tree_b.dist[b.position];
}

std::vector<std::vector<AgentId>> Simulator::same_target_groups() const {
  std::unordered_map<NodeId, std::vector<AgentId>> by_target;
  for (const AgentState& a : agents_)
    if (a.intended_next) by_target[*a.intended_next].push_back(a.id);
  std::vector<std::vector<AgentId>> groups;
  for (auto& [node, ids] : by_target)
    if (ids.size() >= 2) {
      std::sort(ids.begin(), ids.end());
      groups.push_back(ids);
    }
  std::sort(groups.begin(), groups.end());
  return groups;
}

// Counts raw conflict situations present before any resolution this step.
void Simulator::census_potential_conflicts() {
  long long count = 0;
  for (const AgentState& a : agents_) {
    if (!a.intended_next) continue;
    AgentId j = occupant_of(*a.intended_next);
    if (j < 0) continue;
    const AgentState& other = agents_[j];
    if (other.done()) {
      ++count;  // goal block
    } else if (other.intended_next && *other.intended_next == a.position && other.id > a.id) {
      ++count;  // mutual edge pair, counted once
    }
  }
  // Diagonal pairs crossing one cell corner.
  std::unordered_map<int, std::vector<AgentId>> by_group;
  for (const AgentState& a : agents_) {
    if (!a.intended_next) continue;
    int group = graph_.cross_group(a.position, *a.intended_next);
    if (group >= 0) by_group[group].push_back(a.id);
  }
  for (const auto& [group, ids] : by_group) {
    for (size_t x = 0; x < ids.size(); ++x)
      for (size_t y = x + 1; y < ids.size(); ++y) {
        const AgentState& a = agents_[ids[x]];
        const AgentState& b = agents_[ids[y]];
        if (*a.intended_next != *b.intended_next && *a.intended_next != b.position) ++count;
      }
  }
  for (const auto& group : same_target_groups()) {
    if (group.size() >= 3) {
      ++count;
    } else if (opposing(agents_[group[0]], agents_[group[1]])) {
      ++count;  // head-on
    } else {
      ++count;  // same direction
    }
  }
  stats_.potential_conflicts += count;
}

bool Simulator::sweep_cuckoo() {
  bool changed = false;
  for (AgentState& a : agents_) {
    if (!a.intended_next) continue;
    AgentId j = occupant_of(*a.intended_next);
    if (j < 0 || !agents_[j].done()) continue;
    cuckoo_exchange(agents_[j], a);
    settle(agents_[j]);
    settle(a);
    tags_[a.id] = tags_[j] = StepTag::Cuckoo;
    log_event(ConflictKind::GoalBlock, Resolution::Cuckoo, {j, a.id});
    changed = true;
  }
  return changed;
}

bool Simulator::sweep_edge() {
  bool changed = false;
  for (AgentState& a : agents_) {
    if (!a.intended_next) continue;
    AgentId j = occupant_of(*a.intended_next);
    if (j < 0 || j <= a.id) continue;
    AgentState& b = agents_[j];
    if (!b.intended_next || *b.intended_next != a.position) continue;
    swap_agendas(a, b);
    settle(a);
    settle(b);
    if (tags_[a.id] == StepTag::None) tags_[a.id] = StepTag::Swap;
    if (tags_[b.id] == StepTag::None) tags_[b.id] = StepTag::Swap;
    log_event(ConflictKind::EdgeSwap, Resolution::AgendaSwap, {a.id, b.id});
    changed = true;
  }
  return changed;
}

// Two diagonal moves through the same cell corner collide bodily; treated as
// an edge conflict. The agenda swap is applied once per pair per step; a pair
// that still crosses afterwards is serialized by alternation at commit time.
bool Simulator::sweep_crossing() {
  bool changed = false;
  std::unordered_map<int, std::vector<AgentId>> by_group;
  for (const AgentState& a : agents_) {
    if (!a.intended_next) continue;
    int group = graph_.cross_group(a.position, *a.intended_next);
    if (group >= 0) by_group[group].push_back(a.id);
  }
  std::vector<int> groups;
  for (const auto& [g, ids] : by_group) groups.push_back(g);
  std::sort(groups.begin(), groups.end());
  for (int g : groups) {
    const auto& ids = by_group[g];
    for (size_t x = 0; x < ids.size(); ++x) {
      for (size_t y = x + 1; y < ids.size(); ++y) {
        AgentState& a = agents_[ids[x]];
        AgentState& b = agents_[ids[y]];
        if (!a.intended_next || !b.intended_next) continue;
        if (graph_.cross_group(a.position, *a.intended_next) != g ||
            graph_.cross_group(b.position, *b.intended_next) != g)
          continue;
        if (*a.intended_next == *b.intended_next || *a.intended_next == b.position) continue;
        long long pair_key = static_cast<long long>(a.id) * agents_.size() + b.id;
        if (!crossing_swapped_.insert(pair_key).second) continue;
        swap_agendas(a, b);
        settle(a);
        settle(b);
        if (tags_[a.id] == StepTag::None) tags_[a.id] = StepTag::Swap;
        if (tags_[b.id] == StepTag::None) tags_[b.id] = StepTag::Swap;
        log_event(ConflictKind::EdgeSwap, Resolution::AgendaSwap, {a.id, b.id});
        changed = true;
      }
    }
  }
  return changed;
}

bool Simulator::sweep_headon() {
  bool changed = false;
  for (const auto& group : same_target_groups()) {
    for (size_t x = 0; x < group.size(); ++x) {
      for (size_t y = x + 1; y < group.size(); ++y) {
        AgentState& a = agents_[group[x]];
        AgentState& b = agents_[group[y]];
        if (!a.intended_next || !b.intended_next || *a.intended_next != *b.intended_next)
          continue;
        if (!opposing(a, b)) continue;
        swap_agendas(a, b);
        settle(a);
        settle(b);
        if (tags_[a.id] == StepTag::None) tags_[a.id] = StepTag::Swap;
        if (tags_[b.id] == StepTag::None) tags_[b.id] = StepTag::Swap;
        log_event(ConflictKind::NodeHeadOn, Resolution::AgendaSwap, {a.id, b.id});
        changed = true;
      }
    }
  }
  return changed;
}

// Local assignment over the conflicting agents and their agenda heads; the
// whole agendas are permuted so goals are conserved.
bool Simulator::sweep_multi() {
  bool changed = false;
  for (const auto& group : same_target_groups()) {
    if (group.size() < 3) continue;
    NodeId target = *agents_[group[0]].intended_next;
    if (!multi_resolved_.insert(target).second) continue;
    const int g = static_cast<int>(group.size());
    CostMatrix costs(g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        costs.at(i, j) = trees_.tree(agents_[group[j]].head()).dist[agents_[group[i]].position];
    Assignment assignment = solve_sum(costs);
    std::vector<std::deque<NodeId>> old_agendas(g);
    for (int i = 0; i < g; ++i) old_agendas[i] = agents_[group[i]].agenda;
    bool permuted = false;
    for (int i = 0; i < g; ++i) {
      if (assignment.perm[i] != i) permuted = true;
      agents_[group[i]].agenda = old_agendas[assignment.perm[i]];
    }
    for (int i = 0; i < g; ++i) {
      settle(agents_[group[i]]);
      if (permuted && tags_[group[i]] == StepTag::None) tags_[group[i]] = StepTag::Swap;
    }
    log_event(ConflictKind::NodeMulti, Resolution::LocalAssignment, group);
    changed = changed || permuted;
  }
  return changed;
}

void Simulator::stabilize() {
  // Devices in spec order, swept to a fixpoint. Termination: cuckoos shrink
  // the Done set, edge/head-on swaps strictly shrink total remaining
  // distance, crossing swaps and local assignments run once per pair/node.
  bool changed = true;
  while (changed) {
    changed = sweep_cuckoo();
    changed = sweep_edge() || changed;
    changed = sweep_crossing() || changed;
    changed = sweep_headon() || changed;
    changed = sweep_multi() || changed;
  }
}

bool Simulator::commit() {
  const int n_agents = static_cast<int>(agents_.size());
  std::vector<char> mover(n_agents, 0);
  for (const AgentState& a : agents_)
    if (a.intended_next) mover[a.id] = 1;

  // Same-direction node conflicts: one agent proceeds per contested node,
  // rotating by id so nobody starves.
  for (const auto& group : same_target_groups()) {
    NodeId target = *agents_[group[0]].intended_next;
    AgentId winner = alternation_winner(node_alternation_, target, group);
    for (AgentId id : group) {
      if (id == winner) continue;
      mover[id] = 0;
      if (tags_[id] == StepTag::None) tags_[id] = StepTag::Zip;
    }
    log_event(ConflictKind::NodeSameDirection, Resolution::Zip, group);
  }

  // Residual corner crossings: serialize by alternation on the corner key.
  std::unordered_map<int, std::vector<AgentId>> cross_movers;
  for (const AgentState& a : agents_) {
    if (!a.intended_next || !mover[a.id]) continue;
    int group = graph_.cross_group(a.position, *a.intended_next);
    if (group >= 0) cross_movers[group].push_back(a.id);
  }
  std::vector<int> cross_keys;
  for (const auto& [g, ids] : cross_movers)
    if (ids.size() >= 2) cross_keys.push_back(g);
  std::sort(cross_keys.begin(), cross_keys.end());
  for (int g : cross_keys) {
    std::vector<AgentId> ids = cross_movers[g];
    std::sort(ids.begin(), ids.end());
    AgentId winner = alternation_winner(crossing_alternation_, g, ids);
    for (AgentId id : ids) {
      if (id == winner) continue;
      mover[id] = 0;
      if (tags_[id] == StepTag::None) tags_[id] = StepTag::Zip;
    }
    log_event(ConflictKind::EdgeSwap, Resolution::Wait, ids);
  }

  // Wait propagation along the inverted dependency graph: anything blocked by
  // a non-mover waits too. Visited-marking keeps this linear.
  DependencyGraph deps = DependencyGraph::build(agents_, occupant_);
  std::vector<std::vector<AgentId>> followers = deps.followers();
  std::vector<AgentId> queue;
  for (const AgentState& a : agents_)
    if (!mover[a.id]) queue.push_back(a.id);
  while (!queue.empty()) {
    AgentId blocked = queue.back();
    queue.pop_back();
    for (AgentId follower : followers[blocked]) {
      if (!mover[follower]) continue;
      mover[follower] = 0;
      if (tags_[follower] == StepTag::None) tags_[follower] = StepTag::Zip;
      queue.push_back(follower);
    }
  }

  bool any_mover = std::any_of(mover.begin(), mover.end(), [](char c) { return c != 0; });

  // Progress rescue: stabilized intents always contain either a rotation
  // cycle or an agent with a free target; commit one of those.
  if (!any_mover && !all_done()) {
    ++stats_.rescues;
    std::vector<char> on_stack(n_agents, 0), seen(n_agents, 0);
    std::vector<AgentId> cycle;
    for (const AgentState& a : agents_) {
      if (a.done() || seen[a.id]) continue;
      std::vector<AgentId> path;
      AgentId cur = a.id;
      while (cur >= 0 && !seen[cur] && !agents_[cur].done() && agents_[cur].intended_next) {
        seen[cur] = 1;
        on_stack[cur] = 1;
        path.push_back(cur);
        cur = deps.blocker[cur];
        if (cur >= 0 && on_stack[cur]) {
          // Found a rotation cycle starting at cur.
          auto it = std::find(path.begin(), path.end(), cur);
          cycle.assign(it, path.end());
          break;
        }
      }
      for (AgentId id : path) on_stack[id] = 0;
      if (!cycle.empty()) break;
    }
    if (cycle.size() >= 3) {
      for (AgentId id : cycle) mover[id] = 1;
    } else {
      for (const AgentState& a : agents_) {
        if (a.done() || !a.intended_next) continue;
        if (occupant_of(*a.intended_next) < 0) {
          mover[a.id] = 1;
          break;
        }
      }
    }
    any_mover = std::any_of(mover.begin(), mover.end(), [](char c) { return c != 0; });
    if (!any_mover)
      throw SimulationError("no agent can move at time " + std::to_string(time_) +
                                "; simulation wedged (solver bug)",
                            schedule_);
  }

  // The committed joint move must be collision-free by construction: movers
  // have pairwise distinct targets, occupied targets are being vacated, and
  // no pair swaps along one edge.
  {
    std::unordered_set<NodeId> claimed_targets;
    for (const AgentState& a : agents_) {
      if (!mover[a.id]) continue;
      NodeId target = *a.intended_next;
      if (!claimed_targets.insert(target).second)
        throw SimulationError("two agents committed into node " + std::to_string(target) +
                                  " at time " + std::to_string(time_) + " (solver bug)",
                              schedule_);
      AgentId occ = occupant_of(target);
      if (occ >= 0 && !mover[occ])
        throw SimulationError("agent " + std::to_string(a.id) + " committed into occupied node " +
                                  std::to_string(target) + " at time " + std::to_string(time_) +
                                  " (solver bug)",
                              schedule_);
      if (occ >= 0 && mover[occ] && *agents_[occ].intended_next == a.position)
        throw SimulationError("agents " + std::to_string(a.id) + " and " + std::to_string(occ) +
                                  " committed an edge swap at time " + std::to_string(time_) +
                                  " (solver bug)",
                              schedule_);
    }
  }

  // Commit all moves simultaneously.
  occupant_.clear();
  for (AgentState& a : agents_) {
    if (mover[a.id]) {
      a.position = *a.intended_next;
      a.status = AgentStatus::Moving;
      moved_[a.id] = 1;
      consecutive_waits_[a.id] = 0;
      if (tags_[a.id] == StepTag::None) tags_[a.id] = StepTag::Move;
    } else {
      moved_[a.id] = 0;
      if (!a.done()) {
        a.status = AgentStatus::Waiting;
        ++consecutive_waits_[a.id];
        stats_.max_consecutive_waits =
            std::max(stats_.max_consecutive_waits, consecutive_waits_[a.id]);
        if (tags_[a.id] == StepTag::None) tags_[a.id] = StepTag::Wait;
      } else {
        consecutive_waits_[a.id] = 0;
      }
    }
    occupant_[a.position] = a.id;
  }
  for (size_t i = 0; i < agents_.size(); ++i) schedule_[i].push_back(agents_[i].position);
  return any_mover;
}

void Simulator::write_trace() {
  if (!options_.trace) return;
  std::function<std::pair<int, int>(NodeId)> coords = options_.coords;
  if (!coords) coords = [](NodeId n) { return std::pair<int, int>(n, 0); };
  for (const AgentState& a : agents_) {
    const char* action = "move";
    switch (tags_[a.id]) {
      case StepTag::Cuckoo: action = "cuckoo"; break;
      case StepTag::Swap: action = "swap"; break;
      case StepTag::Zip: action = "zip"; break;
      case StepTag::Wait: action = "wait"; break;
      default: action = moved_[a.id] ? "move" : "wait"; break;
    }
    auto [x, y] = coords(a.position);
    *options_.trace << "t " << time_ << " agent " << a.id << " at " << x << "," << y << " "
                    << action << "\n";
  }
}

SimResult Simulator::run() {
  const int n_agents = static_cast<int>(agents_.size());
  if (n_agents == 0) throw SimulationError("no agents to simulate");
  for (int i = 0; i < n_agents; ++i)
    if (agents_[i].id != i) throw SimulationError("agent ids must be 0..k-1 in order");

  schedule_.assign(n_agents, {});
  consecutive_waits_.assign(n_agents, 0);
  occupant_.clear();
  for (AgentState& a : agents_) {
    if (occupant_.count(a.position))
      throw SimulationError("two agents start at node " + std::to_string(a.position));
    occupant_[a.position] = a.id;
    schedule_[a.id].push_back(a.position);
  }

  const Cost path_total = initial_path_length();
  stats_.termination_bound =
      saturating_add(saturating_add(path_total, path_total),
                     static_cast<Cost>(n_agents) * graph_.node_count());

  while (true) {
    for (AgentState& a : agents_) settle(a);
    if (all_done()) break;

    tags_.assign(n_agents, StepTag::None);
    moved_.assign(n_agents, 0);
    crossing_swapped_.clear();
    multi_resolved_.clear();

    census_potential_conflicts();
    stabilize();
    if (all_done()) break;

    bool moved = commit();
    stats_.moved_every_step = stats_.moved_every_step && moved;
    write_trace();
    ++time_;
    ++stats_.timesteps;

    if (time_ > stats_.termination_bound)
      throw SimulationError(
          "termination bound " + std::to_string(stats_.termination_bound) +
              " exceeded at time " + std::to_string(time_) + " (solver bug); " +
              std::to_string(n_agents) + " agents, " + std::to_string(graph_.node_count()) +
              " nodes",
          schedule_);
  }

  return {std::move(schedule_), std::move(log_), stats_};
}

}  // namespace

SimResult simulate(const Graph& graph, TreeStore& trees, std::vector<AgentState> agents,
                   const SimOptions& options) {
  Simulator sim(graph, trees, std::move(agents), options);
  return sim.run();
}

long long count_potential_conflicts(const Graph& graph, TreeStore& trees,
                                    std::vector<AgentState> agents) {
  return static_cast<long long>(simulate(graph, trees, std::move(agents)).log.size());
}

}  // namespace mapf
