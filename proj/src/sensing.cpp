#include "swarmmap/sensing.hpp"

#include <cassert>
#include <cstdlib>
#include <string>

#include "swarmmap/errors.hpp"

namespace swarmmap {

std::vector<CellCoord> bresenham_line(CellCoord a, CellCoord b) {
  std::vector<CellCoord> out;
  int x = a.col, y = a.row;
  const int dx = std::abs(b.col - a.col), sx = a.col < b.col ? 1 : -1;
  const int dy = -std::abs(b.row - a.row), sy = a.row < b.row ? 1 : -1;
  int err = dx + dy;
  while (true) {
    out.push_back({y, x});
    if (x == b.col && y == b.row) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
  return out;
}

bool line_of_sight(const Environment& env, CellCoord from, CellCoord to) {
  // Same stepping as bresenham_line, without materializing the cells.
  int x = from.col, y = from.row;
  const int dx = std::abs(to.col - from.col), sx = from.col < to.col ? 1 : -1;
  const int dy = -std::abs(to.row - from.row), sy = from.row < to.row ? 1 : -1;
  int err = dx + dy;
  while (true) {
    if (x == to.col && y == to.row) return true;
    if (!(x == from.col && y == from.row) && env.at({y, x}) == Cell::Obstacle)
      return false;  // blocked strictly between the endpoints
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

SensorReading sense(const Environment& env, const RobotState& robot, int iteration,
                    bool occlusion) {
  if (!robot.alive)
    throw DeadRobot("robot " + std::to_string(robot.id) + " cannot sense: not alive");
  assert(env.is_free(robot.pos));

  SensorReading reading;
  reading.robot_id = robot.id;
  reading.iteration = iteration;
  reading.observations.reserve((kTileRowMax - kTileRowMin + 1) *
                               (kTileColMax - kTileColMin + 1));

  for (int dr = kTileRowMin; dr <= kTileRowMax; ++dr) {
    for (int dc = kTileColMin; dc <= kTileColMax; ++dc) {
      const CellCoord c{robot.pos.row + dr, robot.pos.col + dc};
      if (!env.in_bounds(c)) continue;
      if (occlusion && !line_of_sight(env, robot.pos, c)) continue;
      reading.observations.emplace_back(c, env.at(c));
    }
  }
  return reading;
}

}  // namespace swarmmap
