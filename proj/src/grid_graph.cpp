#include "mapf/grid_graph.hpp"

namespace mapf {

GridGraph build_grid_graph(const GridMap& map, Connectivity connectivity) {
  GridGraph gg;
  gg.width = map.width;
  gg.height = map.height;
  gg.cell_to_node.assign(map.cells.size(), -1);

  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (!map.passable(x, y)) continue;
      gg.cell_to_node[map.cell_index(x, y)] = static_cast<NodeId>(gg.node_to_cell.size());
      gg.node_to_cell.push_back(map.cell_index(x, y));
    }
  }

  gg.graph = Graph(static_cast<int>(gg.node_to_cell.size()));

  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (!map.passable(x, y)) continue;
      NodeId u = gg.node_at(x, y);
      // Right and down cover each orthogonal edge once.
      if (x + 1 < map.width && map.passable(x + 1, y))
        gg.graph.add_undirected_edge(u, gg.node_at(x + 1, y));
      if (y + 1 < map.height && map.passable(x, y + 1))
        gg.graph.add_undirected_edge(u, gg.node_at(x, y + 1));
      if (connectivity != Connectivity::Eight) continue;
      // Diagonals of the square with top-left corner (x, y); the corner rule
      // requires both orthogonal neighbors of a diagonal to be passable.
      if (x + 1 >= map.width || y + 1 >= map.height) continue;
      const bool tl = map.passable(x, y), tr = map.passable(x + 1, y);
      const bool bl = map.passable(x, y + 1), br = map.passable(x + 1, y + 1);
      const int corner = map.cell_index(x, y);
      if (tl && br && tr && bl)
        gg.graph.add_undirected_edge(u, gg.node_at(x + 1, y + 1), 1, corner);
      if (tr && bl && tl && br)
        gg.graph.add_undirected_edge(gg.node_at(x + 1, y), gg.node_at(x, y + 1), 1, corner);
    }
  }
  return gg;
}

}  // namespace mapf
