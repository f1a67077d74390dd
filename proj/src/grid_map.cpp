#include "mapf/grid_map.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace mapf {
namespace {

// Strips one trailing '\r' so both \n and \r\n line endings parse the same.
bool get_line(std::istream& in, std::string& line, int& line_no) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  ++line_no;
  return true;
}

bool parse_header_field(const std::string& line, const std::string& key, long& value) {
  std::istringstream iss(line);
  std::string k;
  long v = 0;
  if (!(iss >> k >> v) || k != key) return false;
  value = v;
  return true;
}

}  // namespace

int GridMap::passable_count() const {
  return static_cast<int>(std::count(cells.begin(), cells.end(), Cell::Passable));
}

GridMap parse_map(std::istream& in) {
  int line_no = 0;
  std::string line;

  if (!get_line(in, line, line_no) || line.rfind("type", 0) != 0)
    throw ParseError("expected 'type <t>' header", line_no);

  long height = 0, width = 0;
  if (!get_line(in, line, line_no) || !parse_header_field(line, "height", height))
    throw ParseError("expected 'height H' header", line_no);
  if (!get_line(in, line, line_no) || !parse_header_field(line, "width", width))
    throw ParseError("expected 'width W' header", line_no);
  if (height <= 0 || width <= 0)
    throw ParseError("map dimensions must be positive", line_no);
  if (!get_line(in, line, line_no) || line != "map")
    throw ParseError("expected 'map' header", line_no);

  GridMap map;
  map.width = static_cast<int>(width);
  map.height = static_cast<int>(height);
  map.cells.reserve(static_cast<size_t>(width) * static_cast<size_t>(height));

  for (int y = 0; y < map.height; ++y) {
    if (!get_line(in, line, line_no))
      throw ParseError("unexpected end of file: expected " + std::to_string(map.height) +
                           " map rows, got " + std::to_string(y),
                       line_no);
    if (static_cast<int>(line.size()) != map.width)
      throw ParseError("row has " + std::to_string(line.size()) + " cells, expected " +
                           std::to_string(map.width),
                       line_no);
    for (char c : line) {
      switch (c) {
        case '.':
        case 'G':
          map.cells.push_back(Cell::Passable);
          break;
        case '@':
        case 'O':
        case 'T':
        case 'W':
          map.cells.push_back(Cell::Blocked);
          break;
        default:
          throw ParseError(std::string("unknown map glyph '") + c + "'", line_no);
      }
    }
  }
  return map;
}

GridMap parse_map_text(const std::string& text) {
  std::istringstream iss(text);
  return parse_map(iss);
}

GridMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open map file: " + path);
  return parse_map(in);
}

std::string serialize_map(const GridMap& map) {
  std::ostringstream out;
  out << "type octile\n"
      << "height " << map.height << "\n"
      << "width " << map.width << "\n"
      << "map\n";
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) out << (map.passable(x, y) ? '.' : '@');
    out << '\n';
  }
  return out.str();
}

}  // namespace mapf
