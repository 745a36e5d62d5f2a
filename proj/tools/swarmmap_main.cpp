// Experiment driver for the collective-mapping simulator.
//
// Subcommands mirror the three studies: `run` (one simulation),
// `scalability` (iterations vs robot count), `network-effect`
// (iterations vs topology), `robustness` (removal schedule vs static
// swarms). Exit codes: 0 ok, 1 config error, 2 some run never reached
// full coverage.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "swarmmap/errors.hpp"
#include "swarmmap/harness.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::optional<int> robots;
  std::optional<int> k;
  std::optional<std::string> topology;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iters;
  std::optional<std::string> occlusion;
  std::string out_csv;
  std::string export_maps;
  std::string export_networks;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "flat key=value config file");
  cmd->add_option("--robots", o.robots, "number of robots");
  cmd->add_option("--k", o.k, "k for the kNN topology");
  cmd->add_option("--topology", o.topology, "knn|chain|none")
      ->check(CLI::IsMember({"knn", "chain", "none"}));
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--max-iters", o.max_iters, "iteration cap per run");
  cmd->add_option("--occlusion", o.occlusion, "on|off line-of-sight occlusion")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--out", o.out_csv, "write per-iteration metrics CSV here");
  cmd->add_option("--export-maps", o.export_maps, "directory for final per-robot map snapshots");
  cmd->add_option("--export-networks", o.export_networks,
                  "directory for per-iteration network snapshots");
}

swarmmap::ExperimentConfig build_config(const CliOverrides& o) {
  swarmmap::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = swarmmap::parse_config_file(o.config_path);
  if (o.robots) cfg.robots = *o.robots;
  if (o.topology) {
    cfg.topology = swarmmap::parse_topology(*o.topology);
    if (cfg.topology.kind == swarmmap::TopologySpec::Kind::KNN)
      cfg.topology.k = o.k.value_or(cfg.topology.k);
  }
  if (o.k && cfg.topology.kind == swarmmap::TopologySpec::Kind::KNN) cfg.topology.k = *o.k;
  if (o.seed) cfg.seed = *o.seed;
  if (o.max_iters) cfg.max_iterations = *o.max_iters;
  if (o.occlusion) cfg.occlusion = *o.occlusion == "on";
  cfg.out_csv = o.out_csv;
  cfg.export_maps_dir = o.export_maps;
  cfg.export_networks_dir = o.export_networks;
  if (cfg.map_path.empty())
    throw swarmmap::SimError("no map configured (set 'map' in the config file)");
  return cfg;
}

int finish(const swarmmap::ExperimentConfig& cfg, const swarmmap::ExperimentResult& result) {
  std::cout << swarmmap::format_table(result);
  if (!cfg.out_csv.empty()) {
    std::ofstream out(cfg.out_csv, std::ios::binary);
    if (!out) throw swarmmap::SinkFailure("cannot open " + cfg.out_csv + " for writing");
    swarmmap::write_csv(result.records, out);
  }
  return result.any_nonterminated ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmmap: collective mapping by a networked robot swarm"};
  app.require_subcommand(1);

  CliOverrides o;
  auto* cmd_run = app.add_subcommand("run", "single simulation run");
  auto* cmd_scal = app.add_subcommand("scalability", "iterations vs robot count");
  auto* cmd_net = app.add_subcommand("network-effect", "iterations vs network topology");
  auto* cmd_rob = app.add_subcommand("robustness", "decaying swarm vs static swarms");
  for (auto* cmd : {cmd_run, cmd_scal, cmd_net, cmd_rob}) add_common_options(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const auto cfg = build_config(o);
    if (cmd_run->parsed()) return finish(cfg, swarmmap::run_single(cfg));
    if (cmd_scal->parsed())
      return finish(cfg, swarmmap::run_scalability(cfg, cfg.scalability_counts));
    if (cmd_net->parsed())
      return finish(cfg, swarmmap::run_network_effect(cfg, cfg.network_topologies));
    const auto schedule = cfg.removal.value_or(swarmmap::RemovalSchedule{50, 5, 3, false});
    return finish(cfg, swarmmap::run_robustness(cfg, schedule));
  } catch (const swarmmap::SimError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
