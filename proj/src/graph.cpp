#include "mapf/graph.hpp"

#include <stdexcept>
#include <string>

namespace mapf {

void Graph::add_undirected_edge(NodeId u, NodeId v, Cost weight, int cross_group) {
  const int n = node_count();
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("explicit self-loops are not stored; waits are implicit");
  const Cost max_weight = static_cast<Cost>(n) * static_cast<Cost>(n);
  if (weight < 1 || weight > max_weight)
    throw std::invalid_argument("edge weight " + std::to_string(weight) +
                                " outside [1, n^2] = [1, " + std::to_string(max_weight) + "]");
  adjacency_[u].push_back({v, weight, cross_group});
  adjacency_[v].push_back({u, weight, cross_group});
  directed_edges_ += 2;
  if (weight != 1) unit_weights_ = false;
}

Cost Graph::edge_weight(NodeId u, NodeId v) const {
  for (const Edge& e : adjacency_[u])
    if (e.to == v) return e.weight;
  return kInfCost;
}

int Graph::cross_group(NodeId u, NodeId v) const {
  for (const Edge& e : adjacency_[u])
    if (e.to == v) return e.cross_group;
  return -1;
}

std::vector<int> connected_components(const Graph& graph) {
  const int n = graph.node_count();
  std::vector<int> label(n, -1);
  std::vector<NodeId> stack;
  int next_label = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (label[root] != -1) continue;
    label[root] = next_label;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (const Graph::Edge& e : graph.neighbors(u)) {
        if (label[e.to] == -1) {
          label[e.to] = next_label;
          stack.push_back(e.to);
        }
      }
    }
    ++next_label;
  }
  return label;
}

}  // namespace mapf
