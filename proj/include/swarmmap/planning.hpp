#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmmap/occupancy.hpp"
#include "swarmmap/world.hpp"

namespace swarmmap {

// One 4-connected component of frontier cells: Free cells bordering Unknown
// space. The representative is the member nearest the component centroid
// (ties in row-major order) and is what robots navigate to.
struct Frontier {
  std::vector<CellCoord> cells;  // sorted row-major
  CellCoord representative{};
};

// 4-connected route from the start's successor to the goal; empty when start
// equals goal. Never enters a cell classified Occupied; minimal length under
// unit step cost.
struct Path {
  std::vector<CellCoord> cells;
};

// All maximal 4-connected components of {Free cells 4-adjacent to at least
// one Unknown cell}, ordered by representative in row-major order.
std::vector<Frontier> detect_frontiers(const OccupancyGrid& map);

// Representative of the frontier nearest robot.pos (Euclidean, ties by
// row-major representative); nothing when there is no frontier left, in
// which case the robot idles on a locally complete map.
std::optional<CellCoord> select_target(std::span<const Frontier> frontiers,
                                       const RobotState& robot);

// A* over cells classified Free or Unknown (Unknown is traversable: frontier
// targets border unexplored space, and replanning corrects for walls found en
// route). Unit step cost, Manhattan heuristic. Tie-breaking is pinned: equal
// f -> lower h wins -> row-major cell order. Returns nothing when the goal is
// unreachable. Throws StartOccupied.
std::optional<Path> astar(const OccupancyGrid& map, CellCoord start, CellCoord goal);

}  // namespace swarmmap
