#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swarmmap {

enum class Cell : std::uint8_t { Free, Obstacle };

// Grid coordinate, (row, col). Ordering is row-major, which the rest of the
// simulator uses for deterministic tie-breaking.
struct CellCoord {
  int row{};
  int col{};
  auto operator<=>(const CellCoord&) const = default;
};

// Squared Euclidean distance between cell centers; exact in integers.
inline std::int64_t dist2(CellCoord a, CellCoord b) {
  const std::int64_t dr = a.row - b.row;
  const std::int64_t dc = a.col - b.col;
  return dr * dr + dc * dc;
}

// Immutable ground truth: closed grid of free/obstacle cells plus optional
// spawn points. Safe to share read-only across threads after load.
struct Environment {
  int width{};
  int height{};
  std::vector<Cell> cells;  // row-major
  std::vector<CellCoord> spawns;

  bool in_bounds(CellCoord c) const {
    return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
  }
  std::size_t index(CellCoord c) const {
    return static_cast<std::size_t>(c.row) * width + c.col;
  }
  Cell at(CellCoord c) const { return cells[index(c)]; }
  bool is_free(CellCoord c) const { return in_bounds(c) && at(c) == Cell::Free; }
  std::size_t cell_count() const { return cells.size(); }

  bool operator==(const Environment&) const = default;
};

struct RobotState {
  int id{};
  CellCoord pos{};
  bool alive{true};
  std::optional<CellCoord> target{};
  std::vector<CellCoord> path{};  // remaining cells, first is adjacent to pos
  double heading{};               // radians in [-pi, pi), consensus demo only
};

// Decodes line-oriented ASCII ('#' obstacle, '.' free, 'S' spawn) into an
// Environment. 'S' cells are free and appended to spawns in reading order.
// Throws RaggedMap, IllegalChar, OpenBoundary, EmptyMap.
Environment load_environment(std::string_view source);

// Inverse of load_environment: '#'/'.'/'S', '\n' between rows, no trailing
// newline. Reloading the result yields an identical Environment.
std::string to_map_text(const Environment& env);

// Places n robots: the first n spawn points when the map provides enough,
// otherwise n distinct free cells drawn with the seeded generator. Ids are
// 0..n-1; headings are uniform in [-pi, pi) from per-id streams. Pure in
// (env, n, seed). Throws TooManyRobots.
std::vector<RobotState> place_robots(const Environment& env, int n, std::uint64_t seed);

}  // namespace swarmmap
