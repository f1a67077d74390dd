#include "mapf/shortest_paths.hpp"

#include <deque>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace mapf {
namespace {

ShortestPathTree make_empty(const Graph& graph, NodeId goal) {
  ShortestPathTree tree;
  tree.goal = goal;
  tree.dist.assign(graph.node_count(), kInfCost);
  tree.parent.assign(graph.node_count(), -1);
  return tree;
}

// Final parents are canonical regardless of visit order: every settled node
// relaxes all neighbors, so parent[v] ends as the smallest co-optimal id.
void relax(ShortestPathTree& tree, NodeId from, NodeId to, Cost weight, bool& improved) {
  Cost candidate = saturating_add(tree.dist[from], weight);
  if (candidate < tree.dist[to]) {
    tree.dist[to] = candidate;
    tree.parent[to] = from;
    improved = true;
  } else if (candidate == tree.dist[to] && from < tree.parent[to]) {
    tree.parent[to] = from;
  }
}

ShortestPathTree bfs_tree(const Graph& graph, NodeId goal) {
  ShortestPathTree tree = make_empty(graph, goal);
  tree.dist[goal] = 0;
  std::deque<NodeId> queue{goal};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (const Graph::Edge& e : graph.neighbors(u)) {
      bool improved = false;
      relax(tree, u, e.to, e.weight, improved);
      if (improved) queue.push_back(e.to);
    }
  }
  return tree;
}

ShortestPathTree dijkstra_tree(const Graph& graph, NodeId goal) {
  ShortestPathTree tree = make_empty(graph, goal);
  tree.dist[goal] = 0;
  using Item = std::pair<Cost, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, goal});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != tree.dist[u]) continue;  // stale entry
    for (const Graph::Edge& e : graph.neighbors(u)) {
      bool improved = false;
      relax(tree, u, e.to, e.weight, improved);
      if (improved) heap.push({tree.dist[e.to], e.to});
    }
  }
  return tree;
}

}  // namespace

ShortestPathTree build_tree(const Graph& graph, NodeId goal) {
  if (goal < 0 || goal >= graph.node_count())
    throw std::invalid_argument("goal node " + std::to_string(goal) + " out of range");
  return graph.unit_weights() ? bfs_tree(graph, goal) : dijkstra_tree(graph, goal);
}

NodeId next_hop(const ShortestPathTree& tree, NodeId at) {
  if (at == tree.goal) throw std::invalid_argument("already at the goal");
  if (tree.dist[at] == kInfCost)
    throw std::invalid_argument("node " + std::to_string(at) + " cannot reach goal " +
                                std::to_string(tree.goal));
  return tree.parent[at];
}

DistanceMatrix distance_matrix(const Graph& graph, const std::vector<NodeId>& sources,
                               const std::vector<NodeId>& targets) {
  DistanceMatrix matrix;
  matrix.sources = sources;
  matrix.targets = targets;
  matrix.entries.resize(sources.size() * targets.size());
  for (size_t j = 0; j < targets.size(); ++j) {
    ShortestPathTree tree = build_tree(graph, targets[j]);
    for (size_t i = 0; i < sources.size(); ++i)
      matrix.entries[i * targets.size() + j] = tree.dist[sources[i]];
  }
  return matrix;
}

}  // namespace mapf
