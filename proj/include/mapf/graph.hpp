#pragma once

#include <vector>

#include "mapf/types.hpp"

namespace mapf {

// Undirected weighted graph with implicit self-loop wait edges of cost
// wait_cost. Both directions of an edge are stored; weights are integers in
// [1, n^2]. cross_group links the two diagonal edges that share a cell corner
// on 8-connected grids (-1 for everything else).
class Graph {
 public:
  struct Edge {
    NodeId to;
    Cost weight;
    int cross_group;
  };

  Graph() = default;
  explicit Graph(int node_count) : adjacency_(node_count) {}

  int node_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return directed_edges_ / 2; }

  void add_undirected_edge(NodeId u, NodeId v, Cost weight = 1, int cross_group = -1);

  const std::vector<Edge>& neighbors(NodeId u) const { return adjacency_[u]; }
  // kInfCost when no edge (u, v) exists.
  Cost edge_weight(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return edge_weight(u, v) != kInfCost; }
  int cross_group(NodeId u, NodeId v) const;

  bool unit_weights() const { return unit_weights_; }
  Cost wait_cost() const { return wait_cost_; }
  void set_wait_cost(Cost c) { wait_cost_ = c; }

 private:
  std::vector<std::vector<Edge>> adjacency_;
  int directed_edges_ = 0;
  bool unit_weights_ = true;
  Cost wait_cost_ = 1;
};

// Labels such that two nodes share a label iff they are connected; O(n + e).
std::vector<int> connected_components(const Graph& graph);

}  // namespace mapf
