#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmmap/metrics.hpp"
#include "swarmmap/netgraph.hpp"
#include "swarmmap/swarm.hpp"

namespace swarmmap {

// Everything one experiment needs. Loaded from a flat key=value config file
// ('#' starts a comment), then overridden by CLI flags. Repeated runs use
// seeds seed+0 .. seed+repeats-1 so conditions pair up across a study.
struct ExperimentConfig {
  std::string map_path;
  int robots{15};
  TopologySpec topology{TopologySpec::knn(1)};
  std::uint64_t seed{42};
  int max_iterations{20000};
  std::optional<RemovalSchedule> removal{};
  bool occlusion{true};
  int repeats{5};

  // Study parameters (defaults follow the experiments this reproduces).
  std::vector<int> scalability_counts{5, 10, 15, 20};
  std::vector<TopologySpec> network_topologies{
      TopologySpec::chain(),  TopologySpec::none(),   TopologySpec::knn(1),
      TopologySpec::knn(2),   TopologySpec::knn(3),   TopologySpec::knn(4),
      TopologySpec::knn(5),   TopologySpec::knn(6)};

  // Output switches (CLI only).
  std::string out_csv;
  std::string export_maps_dir;
  std::string export_networks_dir;
};

// Parses a config file; unknown keys and malformed values throw SimError.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(std::string_view text);

std::string topology_name(TopologySpec spec);
TopologySpec parse_topology(std::string_view token);  // "chain"|"none"|"knn3"|"3"

// One simulation executed to completion or to the iteration cap.
struct RunOutcome {
  int run_id{};
  std::uint64_t seed{};
  std::string condition;
  bool completed{};
  int iterations{};  // completion iteration, or max_iterations if it never completed
  bool aggregate_connected{};
};

struct ConditionSummary {
  std::string condition;
  double mean_iterations{};
  int min_iterations{};
  int max_iterations{};
  std::vector<RunOutcome> runs;
  bool any_nonterminated{};
};

struct ExperimentResult {
  std::vector<ConditionSummary> conditions;
  std::vector<MetricsRecord> records;  // all runs, tagged by run_id
  bool any_nonterminated{};
};

// Single run of the configured condition (run_id 0).
ExperimentResult run_single(const ExperimentConfig& config);

// Iterations-to-completion per robot count (Table-I style study).
ExperimentResult run_scalability(const ExperimentConfig& config,
                                 std::span<const int> robot_counts);

// Iterations-to-completion per topology with a fixed robot count
// (Table-II style study).
ExperimentResult run_network_effect(const ExperimentConfig& config,
                                    std::span<const TopologySpec> topologies);

// Fig.-4 style robustness study: the full swarm, the final-size swarm, and
// the decaying swarm (all with the same seed) as run_ids 0, 1, 2.
ExperimentResult run_robustness(const ExperimentConfig& config,
                                const RemovalSchedule& schedule);

// CSV: header "run_id,iteration,coverage,alive", coverage with 6 decimals,
// rows sorted by (run_id, iteration). Byte-deterministic. Throws SinkFailure.
void write_csv(std::span<const MetricsRecord> records, std::ostream& sink);

// Renders a deterministic result table (also what the CLI prints).
std::string format_table(const ExperimentResult& result);

}  // namespace swarmmap
