#pragma once

#include <utility>
#include <vector>

#include "swarmmap/world.hpp"

namespace swarmmap {

// One robot's observation for the current iteration: ground-truth labels for
// the visible part of its 6x7 sensing tile. Coordinates are unique and in
// row-major order.
struct SensorReading {
  int robot_id{};
  int iteration{};
  std::vector<std::pair<CellCoord, Cell>> observations;

  bool operator==(const SensorReading&) const = default;
};

// Classic integer Bresenham line from a to b, endpoints included. This is the
// discrete ray used for occlusion; tests check it against an independently
// written tracer.
std::vector<CellCoord> bresenham_line(CellCoord a, CellCoord b);

// True when no obstacle lies strictly between `from` and `to` along the
// Bresenham ray. The target cell itself may be an obstacle (walls are seen).
bool line_of_sight(const Environment& env, CellCoord from, CellCoord to);

// Simulated IR tile: rows pos.row-3 .. pos.row+2, cols pos.col-3 .. pos.col+3,
// clipped to bounds. With occlusion, a cell is observed only if it has line of
// sight from the robot. Labels always match ground truth. Deterministic.
// Throws DeadRobot.
SensorReading sense(const Environment& env, const RobotState& robot, int iteration,
                    bool occlusion);

// Tile extents relative to the robot (inclusive).
inline constexpr int kTileRowMin = -3;
inline constexpr int kTileRowMax = 2;
inline constexpr int kTileColMin = -3;
inline constexpr int kTileColMax = 3;

}  // namespace swarmmap
