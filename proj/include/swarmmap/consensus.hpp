#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "swarmmap/errors.hpp"
#include "swarmmap/netgraph.hpp"
#include "swarmmap/rng.hpp"

namespace swarmmap {

// The collective-computing pattern both tasks in this repo instantiate:
// a local update rule composed with a per-iteration interaction network.
// One synchronous round applies the rule to every agent the network lists as
// a source, reading only the round-start snapshot of its out-neighbors, so
// the result is independent of processing order.
//
// Rules must be pure with respect to their inputs: own state, neighbor
// states, and the supplied generator (derived per agent from round_seed,
// never shared). Agents absent from the network pass through unchanged.
//
// Rule signature: State rule(const State& own,
//                            const std::vector<const State*>& neighbors,
//                            SplitMix64& rng)
template <typename State, typename Rule>
std::vector<State> collective_round(const std::vector<State>& states,
                                    const InteractionNetwork& net, Rule&& rule,
                                    std::uint64_t round_seed,
                                    std::span<const int> processing_order = {}) {
  const int n = static_cast<int>(states.size());
  for (const auto& [id, neighbors] : net.out_neighbors) {
    if (id < 0 || id >= n)
      throw IdMismatch("network source id " + std::to_string(id) + " has no agent state");
    for (const int nb : neighbors)
      if (nb < 0 || nb >= n)
        throw IdMismatch("network neighbor id " + std::to_string(nb) + " has no agent state");
  }

  std::vector<int> order;
  if (processing_order.empty()) {
    for (const auto& [id, _] : net.out_neighbors) order.push_back(id);
  } else {
    order.assign(processing_order.begin(), processing_order.end());
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> sources;
    for (const auto& [id, _] : net.out_neighbors) sources.push_back(id);
    if (sorted != sources)
      throw IdMismatch("processing order is not a permutation of the network sources");
  }

  std::vector<State> result = states;  // pass-through default
  std::vector<const State*> neighbor_ptrs;
  for (const int id : order) {
    const auto& neighbor_ids = net.out_neighbors.at(id);
    neighbor_ptrs.clear();
    for (const int nb : neighbor_ids) neighbor_ptrs.push_back(&states[nb]);
    auto rng = derive_stream(round_seed, stream_id(stream::kRound, static_cast<std::uint32_t>(id)));
    result[id] = rule(states[id], neighbor_ptrs, rng);
  }
  return result;
}

}  // namespace swarmmap
