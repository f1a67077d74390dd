#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mapf {

// Parse failure with the 1-based input line it occurred on (0 = not line specific).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Cell : std::uint8_t { Passable, Blocked };

// Dense row-major grid; (x, y) = (column, row), origin top-left as in MovingAI files.
struct GridMap {
  int width = 0;
  int height = 0;
  std::vector<Cell> cells;

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  int cell_index(int x, int y) const { return y * width + x; }
  Cell at(int x, int y) const { return cells[cell_index(x, y)]; }
  bool passable(int x, int y) const { return at(x, y) == Cell::Passable; }
  int passable_count() const;

  bool operator==(const GridMap&) const = default;
};

// MovingAI .map format: `type <t>`, `height H`, `width W`, `map`, then H rows
// of W glyphs. `.` and `G` are passable; `@`, `O`, `T`, `W` are blocked.
GridMap parse_map(std::istream& in);
GridMap parse_map_text(const std::string& text);
GridMap load_map(const std::string& path);

std::string serialize_map(const GridMap& map);

}  // namespace mapf
