#include "swarmmap/netgraph.hpp"

#include <algorithm>
#include <cassert>

#include "swarmmap/errors.hpp"

namespace swarmmap {

std::vector<int> k_nearest_neighbors(std::span<const RobotState> robots, int self_id, int k) {
  const RobotState* self = nullptr;
  for (const auto& r : robots) {
    if (r.id == self_id && r.alive) {
      self = &r;
      break;
    }
  }
  if (!self) throw UnknownRobot("no alive robot with id " + std::to_string(self_id));

  std::vector<std::pair<std::int64_t, int>> candidates;  // (squared distance, id)
  for (const auto& r : robots) {
    if (!r.alive || r.id == self_id) continue;
    candidates.emplace_back(dist2(self->pos, r.pos), r.id);
  }
  std::sort(candidates.begin(), candidates.end());

  const auto take = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)),
                                          candidates.size());
  std::vector<int> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(candidates[i].second);
  return out;
}

InteractionNetwork build_network(std::span<const RobotState> robots, TopologySpec spec,
                                 int iteration) {
  std::vector<int> alive_ids;
  for (const auto& r : robots)
    if (r.alive) alive_ids.push_back(r.id);
  if (alive_ids.empty()) throw NoRobotsAlive("cannot build a network with no alive robots");

  InteractionNetwork net;
  net.iteration = iteration;
  switch (spec.kind) {
    case TopologySpec::Kind::KNN:
      for (const int id : alive_ids)
        net.out_neighbors[id] = k_nearest_neighbors(robots, id, spec.k);
      break;
    case TopologySpec::Kind::Chain: {
      // Static path graph over the original id order; dead robots take their
      // links with them.
      std::vector<bool> alive_lookup;
      for (const auto& r : robots) {
        if (r.id >= static_cast<int>(alive_lookup.size()))
          alive_lookup.resize(r.id + 1, false);
        alive_lookup[r.id] = r.alive;
      }
      for (const int id : alive_ids) {
        auto& out = net.out_neighbors[id];
        if (id - 1 >= 0 && alive_lookup[id - 1]) out.push_back(id - 1);
        if (id + 1 < static_cast<int>(alive_lookup.size()) && alive_lookup[id + 1])
          out.push_back(id + 1);
      }
      break;
    }
    case TopologySpec::Kind::None:
      for (const int id : alive_ids) net.out_neighbors[id];  // empty list
      break;
  }
  return net;
}

std::vector<int> apply_removals(std::vector<RobotState>& robots,
                                const RemovalSchedule& schedule, int iteration,
                                SplitMix64& rng) {
  assert(iteration >= 1);
  if (schedule.interval <= 0 || schedule.max_events <= 0) return {};
  if (iteration % schedule.interval != 0) return {};
  if (iteration / schedule.interval > schedule.max_events) return {};

  std::vector<int> alive_ids;
  for (const auto& r : robots)
    if (r.alive) alive_ids.push_back(r.id);
  std::sort(alive_ids.begin(), alive_ids.end());

  // Never drop the swarm to zero.
  const auto n_remove = std::min<std::size_t>(static_cast<std::size_t>(schedule.count),
                                              alive_ids.empty() ? 0 : alive_ids.size() - 1);
  if (n_remove == 0) return {};

  std::vector<int> removed;
  if (schedule.random_selection) {
    for (std::size_t i = 0; i < n_remove; ++i) {
      const auto j = i + rng.next_below(alive_ids.size() - i);
      std::swap(alive_ids[i], alive_ids[j]);
    }
    removed.assign(alive_ids.begin(), alive_ids.begin() + n_remove);
    std::sort(removed.begin(), removed.end());
  } else {
    removed.assign(alive_ids.begin(), alive_ids.begin() + n_remove);
  }

  for (auto& r : robots) {
    if (std::find(removed.begin(), removed.end(), r.id) != removed.end()) {
      r.alive = false;
      r.target.reset();
      r.path.clear();
    }
  }
  return removed;
}

std::string to_network_text(const InteractionNetwork& net) {
  std::string out;
  bool first = true;
  for (const auto& [id, neighbors] : net.out_neighbors) {
    if (!first) out.push_back('\n');
    first = false;
    out += std::to_string(id);
    out.push_back(':');
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      out.push_back(i == 0 ? ' ' : ',');
      out += std::to_string(neighbors[i]);
    }
  }
  return out;
}

}  // namespace swarmmap
