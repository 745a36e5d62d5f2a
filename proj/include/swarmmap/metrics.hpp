#pragma once

#include <vector>

namespace swarmmap {

// One row of the per-iteration record stream. coverage is the fraction of
// coverable cells known to at least one alive robot; per_robot_coverage is
// the same fraction per individual map (not part of the CSV schema).
struct MetricsRecord {
  int run_id{};
  int iteration{};
  double coverage{};
  int alive{};
  std::vector<double> per_robot_coverage;
};

}  // namespace swarmmap
