#pragma once

#include <utility>
#include <vector>

#include "mapf/graph.hpp"
#include "mapf/grid_map.hpp"

namespace mapf {

enum class Connectivity { Four, Eight };

// Graph over the passable cells of a grid plus the cell <-> node id mapping.
// Node ids follow row-major cell order.
struct GridGraph {
  Graph graph;
  int width = 0;
  int height = 0;
  std::vector<NodeId> cell_to_node;  // -1 for blocked cells
  std::vector<int> node_to_cell;

  NodeId node_at(int x, int y) const { return cell_to_node[y * width + x]; }
  int x_of(NodeId n) const { return node_to_cell[n] % width; }
  int y_of(NodeId n) const { return node_to_cell[n] / width; }
  std::pair<int, int> coords(NodeId n) const { return {x_of(n), y_of(n)}; }
};

// All edges have weight 1 (diagonals included). Under Eight connectivity a
// diagonal edge exists only if both orthogonal corner cells are passable, and
// the two diagonals of a cell square share a cross_group so the simulator can
// treat simultaneous corner crossings as edge conflicts.
GridGraph build_grid_graph(const GridMap& map, Connectivity connectivity);

}  // namespace mapf
