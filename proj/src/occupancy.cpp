#include "swarmmap/occupancy.hpp"

#include <cassert>
#include <string>

#include "swarmmap/errors.hpp"

namespace swarmmap {

void update_occupancy(OccupancyGrid& map, const SensorReading& reading) {
  for (const auto& [coord, label] : reading.observations) {
    assert(map.in_bounds(coord));
    map.prob[map.index(coord)] = label == Cell::Obstacle ? 1.0 : 0.0;
  }
}

void merge_neighbor_readings(OccupancyGrid& map, std::span<const SensorReading> readings,
                             int current_iteration) {
  for (const auto& r : readings) {
    if (r.iteration != current_iteration)
      throw StaleReading("reading from robot " + std::to_string(r.robot_id) +
                         " stamped iteration " + std::to_string(r.iteration) +
                         " merged at iteration " + std::to_string(current_iteration));
  }
  for (const auto& r : readings) update_occupancy(map, r);
}

double coverage(std::span<const OccupancyGrid> maps, const Environment& env) {
  for (const auto& m : maps) {
    if (m.width != env.width || m.height != env.height)
      throw DimensionMismatch("occupancy grid does not match environment dimensions");
  }
  std::size_t observed = 0;
  for (int r = 0; r < env.height; ++r) {
    for (int c = 0; c < env.width; ++c) {
      for (const auto& m : maps) {
        if (m.classify({r, c}) != CellClass::Unknown) {
          ++observed;
          break;
        }
      }
    }
  }
  return static_cast<double>(observed) / static_cast<double>(env.cell_count());
}

std::pair<std::size_t, std::size_t> coverage_over_mask(std::span<const OccupancyGrid> maps,
                                                       std::span<const std::uint8_t> mask) {
  std::size_t observed = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    ++total;
    for (const auto& m : maps) {
      if (m.prob[i] != 0.5) {
        ++observed;
        break;
      }
    }
  }
  return {observed, total};
}

std::string to_snapshot_text(const OccupancyGrid& map) {
  std::string out;
  out.reserve(map.prob.size() + map.height);
  for (int r = 0; r < map.height; ++r) {
    if (r > 0) out.push_back('\n');
    for (int c = 0; c < map.width; ++c) {
      switch (map.classify({r, c})) {
        case CellClass::Unknown: out.push_back('?'); break;
        case CellClass::Free: out.push_back('.'); break;
        case CellClass::Occupied: out.push_back('#'); break;
      }
    }
  }
  return out;
}

}  // namespace swarmmap
