#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mapf/grid_map.hpp"

namespace mapf {

// One row of a MovingAI .scen file. Coordinates are (x, y) = (column, row).
struct ScenarioEntry {
  int bucket = 0;
  std::string map_name;
  int map_width = 0;
  int map_height = 0;
  int start_x = 0;
  int start_y = 0;
  int goal_x = 0;
  int goal_y = 0;
  double optimal_length = 0.0;  // metadata from the file, not used by the solver
  bool has_optimal = false;
};

// Parses the `version` header plus whitespace-separated rows. The overload
// taking a GridMap additionally rejects out-of-bounds coordinates and
// starts/goals on blocked cells.
std::vector<ScenarioEntry> parse_scenario(std::istream& in);
std::vector<ScenarioEntry> parse_scenario(std::istream& in, const GridMap& map);
std::vector<ScenarioEntry> parse_scenario_text(const std::string& text);
std::vector<ScenarioEntry> parse_scenario_text(const std::string& text, const GridMap& map);
std::vector<ScenarioEntry> load_scenario(const std::string& path, const GridMap& map);

}  // namespace mapf
