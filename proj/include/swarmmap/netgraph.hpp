#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "swarmmap/rng.hpp"
#include "swarmmap/world.hpp"

namespace swarmmap {

// Which robots read whose sensor data this iteration. Directed: i listing j
// means i consumes j's current reading. Only alive robots appear, and no
// robot lists itself (the a_ii self term is implicit in the merge step).
struct InteractionNetwork {
  int iteration{};
  std::map<int, std::vector<int>> out_neighbors;

  bool operator==(const InteractionNetwork&) const = default;
};

struct TopologySpec {
  enum class Kind : std::uint8_t { KNN, Chain, None };
  Kind kind{Kind::KNN};
  int k{1};  // meaningful for KNN only

  static TopologySpec knn(int k) { return {Kind::KNN, k}; }
  static TopologySpec chain() { return {Kind::Chain, 0}; }
  static TopologySpec none() { return {Kind::None, 0}; }  // behaviorally == knn(0)

  bool operator==(const TopologySpec&) const = default;
};

// Robustness experiment schedule: every `interval` iterations remove `count`
// robots, at most `max_events` times. Default selection is the lowest alive
// ids (exactly repeatable); random_selection switches to a seeded draw.
struct RemovalSchedule {
  int interval{50};
  int count{5};
  int max_events{0};
  bool random_selection{false};
};

// The k alive robots (excluding self) closest to self by Euclidean distance
// between cell centers, ties broken by ascending id. Fewer than k others ->
// all of them. Throws UnknownRobot if self_id is not an alive robot.
std::vector<int> k_nearest_neighbors(std::span<const RobotState> robots, int self_id, int k);

// Builds the iteration's network. KNN is recomputed from current positions
// (dynamic, directed); Chain is the static path over original ids restricted
// to alive robots (a removed robot's links disappear, no re-stitching); None
// gives every alive robot an empty list. Throws NoRobotsAlive.
InteractionNetwork build_network(std::span<const RobotState> robots, TopologySpec spec,
                                 int iteration);

// Fires when `iteration` is a multiple of the interval with events remaining;
// marks the selected robots not-alive and returns their ids (ascending).
// Never drops the swarm below one alive robot.
std::vector<int> apply_removals(std::vector<RobotState>& robots,
                                const RemovalSchedule& schedule, int iteration,
                                SplitMix64& rng);

// Snapshot export: one line per alive robot, "id: n1,n2,...".
std::string to_network_text(const InteractionNetwork& net);

}  // namespace swarmmap
