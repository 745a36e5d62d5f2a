// Acceptance suite: every release-gating property of the simulator, one
// pass/fail line per criterion. Run all (default) or one (--criterion N).
// Exits nonzero when any executed criterion fails.

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "swarmmap/consensus.hpp"
#include "swarmmap/errors.hpp"
#include "swarmmap/harness.hpp"
#include "swarmmap/swarm.hpp"

#ifndef SWARMMAP_SOURCE_DIR
#define SWARMMAP_SOURCE_DIR "."
#endif

using namespace swarmmap;

namespace {

std::string repo_path(const std::string& rel) {
  return std::string(SWARMMAP_SOURCE_DIR) + "/" + rel;
}

Environment load_map(const std::string& rel) {
  std::ifstream in(repo_path(rel), std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_environment(text);
}

struct Check {
  bool ok{true};
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

ExperimentConfig basilica_config() {
  ExperimentConfig cfg;
  cfg.map_path = repo_path("maps/basilica.map");
  cfg.seed = 42;
  cfg.repeats = 5;
  cfg.max_iterations = 20000;
  return cfg;
}

double mean_of(const ConditionSummary& c) { return c.mean_iterations; }

// ---------------------------------------------------------------------------
// 1. A* optimality against an independent Dijkstra oracle.
bool criterion_astar(Check& check) {
  auto rng = SplitMix64(1001);
  int instances = 0, reachable = 0;
  while (instances < 200) {
    auto map = OccupancyGrid::unknown(12, 12);
    for (auto& p : map.prob) p = rng.next_double() < 0.2 ? 1.0 : 0.0;

    std::vector<CellCoord> free_cells;
    for (int r = 0; r < 12; ++r)
      for (int c = 0; c < 12; ++c)
        if (map.classify({r, c}) == CellClass::Free) free_cells.push_back({r, c});
    if (free_cells.size() < 2) continue;
    ++instances;

    const auto start = free_cells[rng.next_below(free_cells.size())];
    const auto goal = free_cells[rng.next_below(free_cells.size())];
    const auto path = astar(map, start, goal);
    const auto oracle_len = oracle::dijkstra_length(map, start, goal);

    check.expect(path.has_value() == oracle_len.has_value(),
                 "reachability disagreement on instance " + std::to_string(instances));
    if (path && oracle_len) {
      ++reachable;
      check.expect(static_cast<int>(path->cells.size()) == *oracle_len,
                   "length mismatch on instance " + std::to_string(instances));
    }
    if (!check.ok) return false;
  }
  check.detail << "200 instances, " << reachable << " reachable";
  return check.ok;
}

// ---------------------------------------------------------------------------
// 2. Frontier detection equals the brute-force definition.
bool criterion_frontiers(Check& check) {
  auto rng = SplitMix64(2002);
  for (int trial = 0; trial < 10000; ++trial) {
    auto map = OccupancyGrid::unknown(8, 8);
    for (auto& p : map.prob) {
      const auto roll = rng.next_below(3);
      p = roll == 0 ? 0.5 : roll == 1 ? 0.0 : 1.0;
    }

    auto impl = detect_frontiers(map);
    auto expected = oracle::frontier_components(map);
    std::vector<std::vector<CellCoord>> impl_cells;
    for (const auto& f : impl) impl_cells.push_back(f.cells);
    std::sort(impl_cells.begin(), impl_cells.end());

    check.expect(impl_cells == expected, "component mismatch at trial " + std::to_string(trial));
    for (const auto& f : impl)
      check.expect(f.representative == oracle::component_representative(f.cells),
                   "representative mismatch at trial " + std::to_string(trial));
    if (!check.ok) return false;
  }
  check.detail << "10000 sampled 8x8 patterns";
  return check.ok;
}

// ---------------------------------------------------------------------------
// 3. Scalability ordering: more robots finish sooner, saturating at the top.
bool criterion_scalability(Check& check) {
  auto cfg = basilica_config();
  cfg.topology = TopologySpec::knn(1);
  const std::vector<int> counts{5, 10, 15, 20};
  const auto result = run_scalability(cfg, counts);

  check.expect(!result.any_nonterminated, "a run hit max_iterations");
  std::vector<double> means;
  for (const auto& c : result.conditions) means.push_back(mean_of(c));

  for (std::size_t i = 1; i < means.size(); ++i)
    check.expect(means[i] < means[i - 1],
                 "means not strictly decreasing at step " + std::to_string(i));

  std::vector<double> relative_gaps;
  for (std::size_t i = 1; i < means.size(); ++i)
    relative_gaps.push_back((means[i - 1] - means[i]) / means[i - 1]);
  for (std::size_t i = 0; i + 1 < relative_gaps.size(); ++i)
    check.expect(relative_gaps.back() < relative_gaps[i],
                 "15->20 improvement is not the smallest gap");

  check.detail << "means";
  for (const double m : means) check.detail << ' ' << m;
  return check.ok;
}

// ---------------------------------------------------------------------------
// 4. Network effect: no sharing is worst; k=5 beats k=1 by >= 20%; chain < knn2.
bool criterion_network_effect(Check& check) {
  auto cfg = basilica_config();
  cfg.robots = 15;
  const std::vector<TopologySpec> topologies{
      TopologySpec::none(), TopologySpec::knn(1), TopologySpec::knn(2),
      TopologySpec::knn(3), TopologySpec::knn(4), TopologySpec::knn(5),
      TopologySpec::knn(6), TopologySpec::chain()};
  const auto result = run_network_effect(cfg, topologies);

  check.expect(!result.any_nonterminated, "a run hit max_iterations");
  const auto mean_by_name = [&](const std::string& name) {
    for (const auto& c : result.conditions)
      if (c.condition == name) return c.mean_iterations;
    return -1.0;
  };

  const double none = mean_by_name("none");
  for (int k = 1; k <= 6; ++k)
    check.expect(none > mean_by_name("knn" + std::to_string(k)),
                 "0NN not strictly slower than knn" + std::to_string(k));
  check.expect(mean_by_name("knn5") <= 0.8 * mean_by_name("knn1"),
               "knn5 not at least 20% faster than knn1");
  check.expect(mean_by_name("chain") > mean_by_name("knn2"), "chain not slower than knn2");

  check.detail << "means:";
  for (const auto& c : result.conditions)
    check.detail << ' ' << c.condition << '=' << c.mean_iterations;
  return check.ok;
}

// ---------------------------------------------------------------------------
// 5. Robustness: the decaying swarm completes, lands between the static
//    swarms, and matches the full swarm exactly before the first removal.
bool criterion_robustness(Check& check) {
  auto cfg = basilica_config();
  cfg.robots = 20;
  cfg.topology = TopologySpec::knn(2);
  const RemovalSchedule schedule{50, 5, 3, false};
  const auto result = run_robustness(cfg, schedule);

  check.expect(!result.any_nonterminated, "a run hit max_iterations");
  const int full = result.conditions[0].runs[0].iterations;
  const int small = result.conditions[1].runs[0].iterations;
  const int decaying = result.conditions[2].runs[0].iterations;
  check.expect(full < decaying, "decaying did not finish after the full swarm");
  check.expect(decaying < small, "decaying did not finish before the small swarm");

  // identical prefix before the first removal: run_id 0 vs run_id 2
  std::vector<const MetricsRecord*> run0, run2;
  for (const auto& rec : result.records) {
    if (rec.run_id == 0) run0.push_back(&rec);
    if (rec.run_id == 2) run2.push_back(&rec);
  }
  for (int t = 0; t < schedule.interval - 1; ++t) {
    check.expect(run0[t]->coverage == run2[t]->coverage,
                 "coverage prefix diverges at iteration " + std::to_string(t + 1));
    check.expect(run0[t]->alive == run2[t]->alive,
                 "alive prefix diverges at iteration " + std::to_string(t + 1));
  }
  check.detail << "completion " << full << " < " << decaying << " < " << small;
  return check.ok;
}

// ---------------------------------------------------------------------------
// 6. Coverage monotonicity and sensing soundness on representative runs.
bool criterion_monotonic_sound(Check& check) {
  struct Setup {
    std::string map;
    int robots;
    TopologySpec topology;
    std::optional<RemovalSchedule> removal;
  };
  const std::vector<Setup> setups{
      {"maps/test20.map", 5, TopologySpec::knn(1), std::nullopt},
      {"maps/test20.map", 8, TopologySpec::knn(2), RemovalSchedule{40, 2, 2, false}},
      {"maps/basilica.map", 10, TopologySpec::knn(2), std::nullopt},
  };

  int setup_index = 0;
  for (const auto& setup : setups) {
    const std::string tag = " (setup " + std::to_string(setup_index++) + ")";
    auto state = make_sim_state(load_map(setup.map), setup.robots, setup.topology, 6,
                                setup.removal);
    const auto result = run(state, 20000);
    check.expect(result.completed, "run did not reach full coverage" + tag);

    double prev_coverage = 0.0;
    for (const auto& rec : result.records) {
      check.expect(rec.coverage >= prev_coverage,
                   "coverage decreased at iteration " + std::to_string(rec.iteration) + tag);
      prev_coverage = rec.coverage;
    }

    for (const auto& map : state.maps) {
      for (int r = 0; r < state.env.height; ++r) {
        for (int c = 0; c < state.env.width; ++c) {
          const auto cls = map.classify({r, c});
          if (cls == CellClass::Unknown) continue;
          const bool truth_obstacle = state.env.at({r, c}) == Cell::Obstacle;
          check.expect(cls == (truth_obstacle ? CellClass::Occupied : CellClass::Free),
                       "observed cell contradicts ground truth" + tag);
        }
      }
    }
    if (!check.ok) return false;
  }
  check.detail << setups.size() << " runs checked";
  return check.ok;
}

// ---------------------------------------------------------------------------
// 7. Determinism: identical configs give byte-identical CSV.
bool criterion_determinism(Check& check) {
  ExperimentConfig cfg;
  cfg.map_path = repo_path("maps/test20.map");
  cfg.robots = 3;
  cfg.topology = TopologySpec::knn(1);
  cfg.seed = 7;
  cfg.max_iterations = 5000;
  cfg.repeats = 2;

  const std::vector<int> counts{3, 5};
  std::ostringstream a, b;
  write_csv(run_scalability(cfg, counts).records, a);
  write_csv(run_scalability(cfg, counts).records, b);
  check.expect(a.str() == b.str(), "scalability CSV differs between executions");

  auto basilica = basilica_config();
  basilica.robots = 12;
  basilica.topology = TopologySpec::knn(3);
  std::ostringstream c, d;
  write_csv(run_single(basilica).records, c);
  write_csv(run_single(basilica).records, d);
  check.expect(c.str() == d.str(), "single-run CSV differs between executions");
  check.detail << a.str().size() + c.str().size() << " CSV bytes compared";
  return check.ok;
}

// ---------------------------------------------------------------------------
// 8. Synchronous-round invariance under shuffled processing order.
bool criterion_round_invariance(Check& check) {
  const auto env = load_map("maps/test20.map");
  auto rng = SplitMix64(8008);

  for (int config = 0; config < 20; ++config) {
    const int robots = 3 + static_cast<int>(rng.next_below(6));
    const int k = static_cast<int>(rng.next_below(4));
    const auto seed = rng.next_u64();

    auto base = make_sim_state(env, robots, TopologySpec::knn(k), seed);
    auto shuffled = make_sim_state(env, robots, TopologySpec::knn(k), seed);

    std::vector<int> order(robots);
    for (int t = 0; t < 12; ++t) {
      step(base);
      for (int i = 0; i < robots; ++i) order[i] = i;
      for (int i = 0; i < robots; ++i) {
        const auto j = i + rng.next_below(static_cast<std::uint64_t>(robots - i));
        std::swap(order[i], order[j]);
      }
      step(shuffled, order);
    }
    check.expect(base.maps == shuffled.maps,
                 "maps diverged on config " + std::to_string(config));
    for (int i = 0; i < robots; ++i)
      check.expect(base.robots[i].pos == shuffled.robots[i].pos,
                   "positions diverged on config " + std::to_string(config));
    if (!check.ok) return false;
  }
  check.detail << "20 configurations, 12 steps each";
  return check.ok;
}

// ---------------------------------------------------------------------------
// 9. Heading consensus: convergence, fixed point, and framework equality.
bool criterion_vicsek(Check& check) {
  InteractionNetwork net;  // static connected ring over 8 agents
  for (int i = 0; i < 8; ++i) net.out_neighbors[i] = {(i + 7) % 8, (i + 1) % 8};

  auto rng = SplitMix64(909);
  HeadingVector h;
  for (int i = 0; i < 8; ++i)
    h.headings.push_back(-std::numbers::pi / 2 + std::numbers::pi * rng.next_double());

  int rounds = 0;
  double disagreement = heading_disagreement(h);
  while (disagreement >= 1e-6 && rounds < 1000) {
    h = vicsek_update(h, net, 0.1, 0.0, static_cast<std::uint64_t>(rounds));
    ++rounds;
    disagreement = heading_disagreement(h);
  }
  check.expect(disagreement < 1e-6, "no consensus after 1000 rounds");

  HeadingVector equal;
  equal.headings.assign(8, 1.2345);
  check.expect(vicsek_update(equal, net, 0.1, 0.0, 3) == equal,
               "identical headings are not a fixed point");

  const double dt = 0.1, eta = 0.3;
  const auto rule = [&](const double& own, const std::vector<const double*>& neighbors,
                        SplitMix64& r) {
    return vicsek_local(own, neighbors, dt, eta, r, NoiseKind::UniformAngle);
  };
  for (int trial = 0; trial < 25; ++trial) {
    HeadingVector start;
    for (int i = 0; i < 8; ++i) start.headings.push_back(rng.next_angle());
    const auto round_seed = rng.next_u64();
    const auto via_round = collective_round(start.headings, net, rule, round_seed);
    const auto via_update = vicsek_update(start, net, dt, eta, round_seed);
    check.expect(via_round == via_update.headings,
                 "collective_round differs from vicsek_update at trial " + std::to_string(trial));
  }
  check.detail << "consensus in " << rounds << " rounds";
  return check.ok;
}

// ---------------------------------------------------------------------------
// 10. Markovian contract: stale readings are rejected.
bool criterion_markovian(Check& check) {
  auto grid = OccupancyGrid::unknown(6, 6);
  SensorReading fresh;
  fresh.robot_id = 0;
  fresh.iteration = 12;
  fresh.observations = {{{2, 2}, Cell::Free}};
  SensorReading stale = fresh;
  stale.robot_id = 1;
  stale.iteration = 11;

  bool threw = false;
  try {
    const std::vector<SensorReading> batch{fresh, stale};
    merge_neighbor_readings(grid, batch, 12);
  } catch (const StaleReading&) {
    threw = true;
  }
  check.expect(threw, "stale reading was accepted");
  check.expect(grid.at({2, 2}) == 0.5, "map mutated despite the contract violation");

  const std::vector<SensorReading> ok_batch{fresh};
  merge_neighbor_readings(grid, ok_batch, 12);
  check.expect(grid.at({2, 2}) == 0.0, "fresh reading was not applied");
  return check.ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }

  struct Entry {
    int id;
    const char* name;
    double budget_seconds;  // 0 = no stated budget
    std::function<bool(Check&)> fn;
  };
  const std::vector<Entry> criteria{
      {1, "A* optimality vs Dijkstra oracle", 5, criterion_astar},
      {2, "frontier detection vs brute force", 30, criterion_frontiers},
      {3, "scalability ordering", 300, criterion_scalability},
      {4, "network-effect ordering", 600, criterion_network_effect},
      {5, "robustness of the decaying swarm", 180, criterion_robustness},
      {6, "coverage monotonicity and sensing soundness", 0, criterion_monotonic_sound},
      {7, "byte-identical reruns", 0, criterion_determinism},
      {8, "synchronous-round invariance", 0, criterion_round_invariance},
      {9, "heading consensus", 0, criterion_vicsek},
      {10, "Markovian sharing contract", 0, criterion_markovian},
  };

  bool all_ok = true;
  for (const auto& entry : criteria) {
    if (only != 0 && entry.id != only) continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = entry.fn(check);
    } catch (const std::exception& e) {
      check.detail << "exception: " << e.what();
    }
    const auto seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (entry.budget_seconds > 0 && seconds >= entry.budget_seconds) {
      ok = false;
      check.detail << "; over the " << entry.budget_seconds << "s budget";
    }
    std::printf("[%s] criterion %2d: %s (%s, %.1fs)\n", ok ? "PASS" : "FAIL", entry.id,
                entry.name, check.detail.str().c_str(), seconds);
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
