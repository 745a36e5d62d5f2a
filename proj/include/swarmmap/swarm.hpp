#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "swarmmap/metrics.hpp"
#include "swarmmap/netgraph.hpp"
#include "swarmmap/occupancy.hpp"
#include "swarmmap/planning.hpp"
#include "swarmmap/rng.hpp"
#include "swarmmap/sensing.hpp"
#include "swarmmap/world.hpp"

namespace swarmmap {

// Full state of one simulation. robots and maps are indexed by robot id;
// dead robots keep their last map for inspection but take no further part.
struct SimState {
  Environment env;
  std::vector<RobotState> robots;
  std::vector<OccupancyGrid> maps;
  int iteration{0};
  TopologySpec topology{};
  std::optional<RemovalSchedule> schedule{};
  std::uint64_t seed{0};
  bool occlusion{true};
};

SimState make_sim_state(Environment env, int n_robots, TopologySpec topology,
                        std::uint64_t seed, std::optional<RemovalSchedule> schedule = {},
                        bool occlusion = true);

// Per-agent state for the mapping round: the robot, its current reading and
// its own map. Neighbors contribute only their readings (Markovian sharing).
struct MappingAgent {
  RobotState robot;
  SensorReading reading;
  OccupancyGrid map;
};

// The merge-and-plan local rule: write own + neighbor readings into the map,
// re-detect frontiers, pick the nearest one, plan with A*, advance one cell.
// Pure in its inputs; this is what step() feeds to collective_round.
MappingAgent mapping_local(const MappingAgent& own,
                           const std::vector<const MappingAgent*>& neighbors,
                           SplitMix64& rng);

struct StepOutcome {
  InteractionNetwork network;
  std::vector<int> removed;
};

// One synchronous iteration: (1) scheduled removals, (2) all alive robots
// sense, (3) network built from current positions, (4) each robot merges its
// own and its out-neighbors' current readings, (5) each robot replans and
// moves one cell, (6) iteration increments. Phases (4)-(5) run as one
// collective round over the phase-(2) snapshot, so no robot sees another's
// intra-iteration updates; processing_order exists to let tests shuffle the
// round. Throws NoRobotsAlive.
StepOutcome step(SimState& state, std::span<const int> processing_order = {});

// Cells the exploration is guaranteed to observe before every robot's
// frontier queue empties: cells robots can stand on (4-connected flood fill
// from the initial positions over ground-truth free cells) plus the obstacle
// cells 4-adjacent to those. Standing on a free cell always reveals its four
// neighbors, and an unknown cell 4-adjacent to known free space keeps a
// frontier alive, so a run terminates exactly when this set is fully known.
std::vector<std::uint8_t> coverable_mask(const Environment& env,
                                         std::span<const RobotState> robots);

struct RunResult {
  std::vector<MetricsRecord> records;
  bool completed{false};
  int completion_iteration{-1};  // -1 when max_iterations was hit first
  bool aggregate_connected{false};  // union-over-time network connectivity
};

struct RunHooks {
  std::function<void(const SimState&, const StepOutcome&)> after_step;
};

// Steps until the union of alive robots' maps covers every coverable cell or
// max_iterations is reached, recording one MetricsRecord per iteration.
RunResult run(SimState& state, int max_iterations, const RunHooks& hooks = {});

// --- Heading consensus (the averaging instance of the same framework) ---

// Headings indexed by agent id, wrapped into [-pi, pi).
struct HeadingVector {
  std::vector<double> headings;
  bool operator==(const HeadingVector&) const = default;
};

// The update's noise term: the paper-style bounded angle by default, with a
// truncated Gaussian alternative behind the config switch.
enum class NoiseKind : std::uint8_t { UniformAngle, TruncatedGaussian };

double vicsek_noise(SplitMix64& rng, NoiseKind kind);

// One agent's heading update: own + (dt/k) * sum of wrapped differences to
// the k out-neighbors, plus eta-scaled noise, wrapped back into [-pi, pi).
// Unchanged when the agent has no neighbors and eta is zero.
double vicsek_local(double own, const std::vector<const double*>& neighbors, double dt,
                    double eta, SplitMix64& rng, NoiseKind noise);

// Synchronous heading update over the whole network. Per-agent noise streams
// derive from round_seed exactly as collective_round does, so instantiating
// the generic round with vicsek_local reproduces this function bit for bit.
// Throws IdMismatch when the network references ids outside the vector.
HeadingVector vicsek_update(const HeadingVector& h, const InteractionNetwork& net, double dt,
                            double eta, std::uint64_t round_seed,
                            NoiseKind noise = NoiseKind::UniformAngle);

// Largest pairwise wrapped heading difference; the consensus error measure.
double heading_disagreement(const HeadingVector& h);

}  // namespace swarmmap
