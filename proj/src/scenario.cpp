#include "mapf/scenario.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace mapf {
namespace {

bool get_line(std::istream& in, std::string& line, int& line_no) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  ++line_no;
  return true;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

void check_against_map(const ScenarioEntry& e, const GridMap& map, int line_no) {
  auto check = [&](int x, int y, const char* what) {
    if (!map.in_bounds(x, y))
      throw ParseError(std::string(what) + " (" + std::to_string(x) + "," + std::to_string(y) +
                           ") outside map bounds " + std::to_string(map.width) + "x" +
                           std::to_string(map.height),
                       line_no);
    if (!map.passable(x, y))
      throw ParseError(std::string(what) + " (" + std::to_string(x) + "," + std::to_string(y) +
                           ") lies on a blocked cell",
                       line_no);
  };
  check(e.start_x, e.start_y, "start");
  check(e.goal_x, e.goal_y, "goal");
}

std::vector<ScenarioEntry> parse_impl(std::istream& in, const GridMap* map) {
  int line_no = 0;
  std::string line;
  if (!get_line(in, line, line_no) || line.rfind("version", 0) != 0)
    throw ParseError("expected 'version' header", line_no);

  std::vector<ScenarioEntry> entries;
  while (get_line(in, line, line_no)) {
    if (blank(line)) continue;
    std::istringstream iss(line);
    ScenarioEntry e;
    if (!(iss >> e.bucket >> e.map_name >> e.map_width >> e.map_height >> e.start_x >>
          e.start_y >> e.goal_x >> e.goal_y))
      throw ParseError("malformed scenario row", line_no);
    if (iss >> e.optimal_length) e.has_optimal = true;
    if (map) check_against_map(e, *map, line_no);
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace

std::vector<ScenarioEntry> parse_scenario(std::istream& in) { return parse_impl(in, nullptr); }

std::vector<ScenarioEntry> parse_scenario(std::istream& in, const GridMap& map) {
  return parse_impl(in, &map);
}

std::vector<ScenarioEntry> parse_scenario_text(const std::string& text) {
  std::istringstream iss(text);
  return parse_scenario(iss);
}

std::vector<ScenarioEntry> parse_scenario_text(const std::string& text, const GridMap& map) {
  std::istringstream iss(text);
  return parse_scenario(iss, map);
}

std::vector<ScenarioEntry> load_scenario(const std::string& path, const GridMap& map) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  return parse_scenario(in, map);
}

}  // namespace mapf
