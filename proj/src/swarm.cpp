#include "swarmmap/swarm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "swarmmap/consensus.hpp"
#include "swarmmap/errors.hpp"

namespace swarmmap {

SimState make_sim_state(Environment env, int n_robots, TopologySpec topology,
                        std::uint64_t seed, std::optional<RemovalSchedule> schedule,
                        bool occlusion) {
  SimState s;
  s.robots = place_robots(env, n_robots, seed);
  s.maps.assign(n_robots, OccupancyGrid::unknown(env.width, env.height));
  s.env = std::move(env);
  s.topology = topology;
  s.schedule = schedule;
  s.seed = seed;
  s.occlusion = occlusion;
  return s;
}

MappingAgent mapping_local(const MappingAgent& own,
                           const std::vector<const MappingAgent*>& neighbors,
                           SplitMix64& /*rng*/) {
  MappingAgent next = own;

  std::vector<SensorReading> batch;
  batch.reserve(neighbors.size() + 1);
  batch.push_back(own.reading);  // the a_ii self term
  for (const auto* nb : neighbors) batch.push_back(nb->reading);
  merge_neighbor_readings(next.map, batch, own.reading.iteration);

  const auto frontiers = detect_frontiers(next.map);
  next.robot.target = select_target(frontiers, next.robot);
  next.robot.path.clear();
  if (next.robot.target) {
    if (auto path = astar(next.map, next.robot.pos, *next.robot.target);
        path && !path->cells.empty()) {
      next.robot.pos = path->cells.front();
      next.robot.path.assign(path->cells.begin() + 1, path->cells.end());
    }
  }
  return next;
}

StepOutcome step(SimState& s, std::span<const int> processing_order) {
  if (std::none_of(s.robots.begin(), s.robots.end(),
                   [](const RobotState& r) { return r.alive; }))
    throw NoRobotsAlive("step called with no alive robots");

  const int label = s.iteration + 1;
  StepOutcome outcome;

  if (s.schedule) {
    auto rng = derive_stream(s.seed, stream_id(stream::kRemoval, label));
    outcome.removed = apply_removals(s.robots, *s.schedule, label, rng);
  }

  const std::size_t n = s.robots.size();
  std::vector<SensorReading> readings(n);
  for (std::size_t i = 0; i < n; ++i)
    if (s.robots[i].alive) readings[i] = sense(s.env, s.robots[i], label, s.occlusion);

  outcome.network = build_network(s.robots, s.topology, label);

  std::vector<MappingAgent> agents;
  agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    agents.push_back({std::move(s.robots[i]), std::move(readings[i]), std::move(s.maps[i])});

  auto next = collective_round(agents, outcome.network, mapping_local,
                               mix64(s.seed) ^ stream_id(stream::kRound, label),
                               processing_order);

  for (std::size_t i = 0; i < n; ++i) {
#ifndef NDEBUG
    if (next[i].robot.alive) {
      const auto before = agents[i].robot.pos;
      const auto after = next[i].robot.pos;
      assert(std::abs(after.row - before.row) + std::abs(after.col - before.col) <= 1);
      assert(s.env.is_free(after));
    }
#endif
    s.robots[i] = std::move(next[i].robot);
    s.maps[i] = std::move(next[i].map);
  }
  s.iteration = label;
  return outcome;
}

std::vector<std::uint8_t> coverable_mask(const Environment& env,
                                         std::span<const RobotState> robots) {
  std::vector<std::uint8_t> standable(env.cell_count(), 0);
  std::vector<CellCoord> stack;
  for (const auto& r : robots) {
    if (!standable[env.index(r.pos)]) {
      standable[env.index(r.pos)] = 1;
      stack.push_back(r.pos);
    }
  }
  constexpr std::pair<int, int> kNb4[4] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  while (!stack.empty()) {
    const CellCoord cur = stack.back();
    stack.pop_back();
    for (const auto [dr, dc] : kNb4) {
      const CellCoord nb{cur.row + dr, cur.col + dc};
      if (env.is_free(nb) && !standable[env.index(nb)]) {
        standable[env.index(nb)] = 1;
        stack.push_back(nb);
      }
    }
  }

  std::vector<std::uint8_t> mask = standable;
  for (int r = 0; r < env.height; ++r) {
    for (int c = 0; c < env.width; ++c) {
      if (!standable[env.index({r, c})]) continue;
      for (const auto [dr, dc] : kNb4) {
        const CellCoord nb{r + dr, c + dc};
        if (env.in_bounds(nb) && env.at(nb) == Cell::Obstacle) mask[env.index(nb)] = 1;
      }
    }
  }
  return mask;
}

namespace {

std::vector<double> per_robot_coverage(const SimState& s,
                                       std::span<const std::uint8_t> mask,
                                       std::size_t total) {
  std::vector<double> out;
  out.reserve(s.maps.size());
  for (const auto& m : s.maps) {
    std::size_t observed = 0;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i] && m.prob[i] != 0.5) ++observed;
    out.push_back(total == 0 ? 0.0 : static_cast<double>(observed) / total);
  }
  return out;
}

bool union_graph_connected(const std::vector<std::vector<std::uint8_t>>& adj) {
  const std::size_t n = adj.size();
  if (n == 0) return true;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const auto cur = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (adj[cur][j] && !seen[j]) {
        seen[j] = 1;
        ++visited;
        stack.push_back(j);
      }
    }
  }
  return visited == n;
}

}  // namespace

RunResult run(SimState& s, int max_iterations, const RunHooks& hooks) {
  if (max_iterations < 1) throw SimError("max_iterations must be at least 1");

  const auto mask = coverable_mask(s.env, s.robots);
  const std::size_t total = static_cast<std::size_t>(
      std::count(mask.begin(), mask.end(), std::uint8_t{1}));

  const std::size_t n = s.robots.size();
  std::vector<std::vector<std::uint8_t>> union_adj(n, std::vector<std::uint8_t>(n, 0));

  RunResult result;
  std::size_t prev_observed = 0;
  for (int t = 1; t <= max_iterations; ++t) {
    const auto outcome = step(s);

    for (const auto& [id, neighbors] : outcome.network.out_neighbors) {
      for (const int nb : neighbors) {
        union_adj[id][nb] = 1;
        union_adj[nb][id] = 1;
      }
    }

    // The evaluation union keeps every map, including those of removed
    // robots (their last map freezes): the collective map is assembled by
    // the driver for measurement only and loses nothing when units drop out.
    const auto [observed, _] = coverage_over_mask(s.maps, mask);
    assert(observed >= prev_observed);
    prev_observed = observed;

    int alive_count = 0;
    for (const auto& r : s.robots)
      if (r.alive) ++alive_count;

    MetricsRecord rec;
    rec.run_id = 0;
    rec.iteration = t;
    rec.coverage = total == 0 ? 1.0 : static_cast<double>(observed) / total;
    rec.alive = alive_count;
    rec.per_robot_coverage = per_robot_coverage(s, mask, total);
    result.records.push_back(std::move(rec));

    if (hooks.after_step) hooks.after_step(s, outcome);

    if (observed == total) {
      result.completed = true;
      result.completion_iteration = t;
      break;
    }
  }

  result.aggregate_connected = union_graph_connected(union_adj);
  return result;
}

double vicsek_noise(SplitMix64& rng, NoiseKind kind) {
  switch (kind) {
    case NoiseKind::UniformAngle:
      return rng.next_angle();
    case NoiseKind::TruncatedGaussian: {
      double z;
      do {
        z = rng.next_gaussian();
      } while (z < -std::numbers::pi || z > std::numbers::pi);
      return z;
    }
  }
  return 0.0;
}

double vicsek_local(double own, const std::vector<const double*>& neighbors, double dt,
                    double eta, SplitMix64& rng, NoiseKind noise) {
  double acc = 0.0;
  for (const double* nb : neighbors) acc += wrap_angle_diff(*nb - own);
  double next = own;
  if (!neighbors.empty()) next += dt / static_cast<double>(neighbors.size()) * acc;
  if (eta != 0.0) next += eta * vicsek_noise(rng, noise);
  return wrap_heading(next);
}

HeadingVector vicsek_update(const HeadingVector& h, const InteractionNetwork& net, double dt,
                            double eta, std::uint64_t round_seed, NoiseKind noise) {
  const int n = static_cast<int>(h.headings.size());
  for (const auto& [id, neighbors] : net.out_neighbors) {
    if (id < 0 || id >= n)
      throw IdMismatch("network source id " + std::to_string(id) + " has no heading");
    for (const int nb : neighbors)
      if (nb < 0 || nb >= n)
        throw IdMismatch("network neighbor id " + std::to_string(nb) + " has no heading");
  }

  HeadingVector out = h;
  std::vector<const double*> nbrs;
  for (const auto& [id, neighbor_ids] : net.out_neighbors) {
    nbrs.clear();
    for (const int nb : neighbor_ids) nbrs.push_back(&h.headings[nb]);
    auto rng = derive_stream(round_seed, stream_id(stream::kRound, static_cast<std::uint32_t>(id)));
    out.headings[id] = vicsek_local(h.headings[id], nbrs, dt, eta, rng, noise);
  }
  return out;
}

double heading_disagreement(const HeadingVector& h) {
  double worst = 0.0;
  for (std::size_t i = 0; i < h.headings.size(); ++i)
    for (std::size_t j = i + 1; j < h.headings.size(); ++j)
      worst = std::max(worst, std::abs(wrap_angle_diff(h.headings[i] - h.headings[j])));
  return worst;
}

}  // namespace swarmmap
