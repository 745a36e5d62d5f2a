#pragma once

#include <span>
#include <string>
#include <vector>

#include "swarmmap/sensing.hpp"
#include "swarmmap/world.hpp"

namespace swarmmap {

enum class CellClass : std::uint8_t { Unknown, Free, Occupied };

// A single robot's evolving map: per-cell probability that the cell holds an
// obstacle, 0.5 meaning never observed. With perfect sensing the Bayesian
// update collapses to saturation writes, so entries are only ever 0.5, 0.0
// or 1.0; the probability field is kept so a log-odds update could be swapped
// in without touching callers.
struct OccupancyGrid {
  int width{};
  int height{};
  std::vector<double> prob;

  static OccupancyGrid unknown(int width, int height) {
    return OccupancyGrid{width, height,
                         std::vector<double>(static_cast<std::size_t>(width) * height, 0.5)};
  }

  std::size_t index(CellCoord c) const {
    return static_cast<std::size_t>(c.row) * width + c.col;
  }
  double at(CellCoord c) const { return prob[index(c)]; }
  bool in_bounds(CellCoord c) const {
    return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
  }

  CellClass classify(CellCoord c) const {
    const double p = prob[index(c)];
    if (p < 0.5) return CellClass::Free;
    if (p > 0.5) return CellClass::Occupied;
    return CellClass::Unknown;
  }

  bool operator==(const OccupancyGrid&) const = default;
};

// Writes one reading into the map: observed Free -> 0.0, Occupied -> 1.0,
// everything else untouched. Idempotent for identical readings.
void update_occupancy(OccupancyGrid& map, const SensorReading& reading);

// Folds a batch of same-iteration readings into the map. Order-independent
// under perfect sensing. Throws StaleReading when any reading's iteration
// stamp differs from current_iteration (the Markovian sharing contract: only
// current data crosses the network, never histories).
void merge_neighbor_readings(OccupancyGrid& map, std::span<const SensorReading> readings,
                             int current_iteration);

// Fraction of environment cells classified non-Unknown in at least one of the
// given maps. Evaluation-only: the simulation driver calls this between
// iterations; no robot behavior may depend on it. Throws DimensionMismatch.
double coverage(std::span<const OccupancyGrid> maps, const Environment& env);

// Same union count restricted to a cell mask (1 byte per cell, nonzero =
// counted). Returns {observed, total}; used for the reachable-cell
// termination metric.
std::pair<std::size_t, std::size_t> coverage_over_mask(std::span<const OccupancyGrid> maps,
                                                       std::span<const std::uint8_t> mask);

// Grid snapshot: '?' unknown / '.' free / '#' occupied, one line per row,
// '\n' separators, no trailing newline.
std::string to_snapshot_text(const OccupancyGrid& map);

}  // namespace swarmmap
