#pragma once

#include <unordered_map>
#include <vector>

#include "mapf/graph.hpp"
#include "mapf/types.hpp"

namespace mapf {

// Distances toward one goal plus the next hop for every reachable node.
// parent[v] is the neighbor to move to from v; ties among co-optimal parents
// resolve to the smallest node id, so paths are canonical.
struct ShortestPathTree {
  NodeId goal = -1;
  std::vector<Cost> dist;      // kInfCost when unreachable
  std::vector<NodeId> parent;  // -1 at the goal and at unreachable nodes
};

// BFS on unit-weight graphs, binary-heap Dijkstra otherwise.
ShortestPathTree build_tree(const Graph& graph, NodeId goal);

// Throws std::invalid_argument at the goal or on an unreachable node.
NodeId next_hop(const ShortestPathTree& tree, NodeId at);

struct DistanceMatrix {
  std::vector<NodeId> sources;
  std::vector<NodeId> targets;
  std::vector<Cost> entries;  // row-major, sources x targets

  Cost at(int source_index, int target_index) const {
    return entries[static_cast<size_t>(source_index) * targets.size() + target_index];
  }
};

// One tree per target; entry (i, j) = dist(sources[i] -> targets[j]).
DistanceMatrix distance_matrix(const Graph& graph, const std::vector<NodeId>& sources,
                               const std::vector<NodeId>& targets);

// Memoizing per-goal tree cache. Simulation runs are single-threaded, so the
// lazy fill needs no locking; copies of trees are never taken.
class TreeStore {
 public:
  explicit TreeStore(const Graph& graph) : graph_(&graph) {}

  const ShortestPathTree& tree(NodeId goal) {
    auto it = trees_.find(goal);
    if (it == trees_.end()) it = trees_.emplace(goal, build_tree(*graph_, goal)).first;
    return it->second;
  }

  const Graph& graph() const { return *graph_; }

 private:
  const Graph* graph_;
  std::unordered_map<NodeId, ShortestPathTree> trees_;
};

}  // namespace mapf
