#include "swarmmap/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "swarmmap/errors.hpp"

namespace swarmmap {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw SimError("config key '" + key + "' has non-integer value '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw SimError("config key '" + key + "' has non-boolean value '" + value + "'");
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

RemovalSchedule& ensure_removal(ExperimentConfig& cfg) {
  if (!cfg.removal) cfg.removal = RemovalSchedule{50, 5, 3, false};
  return *cfg.removal;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SinkFailure("cannot open " + path.string() + " for writing");
  out << text << '\n';
  if (!out) throw SinkFailure("write failed: " + path.string());
}

struct SingleRun {
  RunOutcome outcome;
  std::vector<MetricsRecord> records;
};

SingleRun execute_run(const ExperimentConfig& cfg, int run_id, std::string condition,
                      int robots, TopologySpec topology, std::uint64_t seed,
                      const std::optional<RemovalSchedule>& removal) {
  Environment env = load_environment(read_file(cfg.map_path));
  SimState state = make_sim_state(std::move(env), robots, topology, seed, removal,
                                  cfg.occlusion);

  namespace fs = std::filesystem;
  RunHooks hooks;
  fs::path net_dir;
  if (!cfg.export_networks_dir.empty()) {
    net_dir = fs::path(cfg.export_networks_dir) / ("run_" + std::to_string(run_id));
    fs::create_directories(net_dir);
    hooks.after_step = [net_dir](const SimState&, const StepOutcome& outcome) {
      char name[32];
      std::snprintf(name, sizeof(name), "iter_%06d.txt", outcome.network.iteration);
      write_text_file(net_dir / name, to_network_text(outcome.network));
    };
  }

  auto result = run(state, cfg.max_iterations, hooks);

  if (!cfg.export_maps_dir.empty()) {
    const fs::path map_dir = fs::path(cfg.export_maps_dir) / ("run_" + std::to_string(run_id));
    fs::create_directories(map_dir);
    for (std::size_t i = 0; i < state.maps.size(); ++i)
      write_text_file(map_dir / ("robot_" + std::to_string(i) + ".txt"),
                      to_snapshot_text(state.maps[i]));
  }

  SingleRun out;
  out.outcome.run_id = run_id;
  out.outcome.seed = seed;
  out.outcome.condition = std::move(condition);
  out.outcome.completed = result.completed;
  out.outcome.iterations = result.completed ? result.completion_iteration : cfg.max_iterations;
  out.outcome.aggregate_connected = result.aggregate_connected;
  out.records = std::move(result.records);
  for (auto& rec : out.records) rec.run_id = run_id;
  return out;
}

ConditionSummary summarize(std::string condition, std::vector<RunOutcome> runs) {
  ConditionSummary s;
  s.condition = std::move(condition);
  s.runs = std::move(runs);
  s.min_iterations = s.runs.front().iterations;
  s.max_iterations = s.runs.front().iterations;
  double sum = 0.0;
  for (const auto& r : s.runs) {
    sum += r.iterations;
    s.min_iterations = std::min(s.min_iterations, r.iterations);
    s.max_iterations = std::max(s.max_iterations, r.iterations);
    if (!r.completed) s.any_nonterminated = true;
  }
  s.mean_iterations = sum / static_cast<double>(s.runs.size());
  return s;
}

}  // namespace

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SimError("config line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw SimError("config line " + std::to_string(line_no) + " is missing key or value");

    if (key == "map") {
      cfg.map_path = value;
    } else if (key == "robots") {
      cfg.robots = static_cast<int>(parse_int(key, value));
    } else if (key == "topology") {
      const TopologySpec parsed = parse_topology(value);
      cfg.topology.kind = parsed.kind;
      if (parsed.kind == TopologySpec::Kind::KNN && value != "knn")
        cfg.topology.k = parsed.k;  // bare "knn" keeps the separate k key
    } else if (key == "k") {
      cfg.topology.k = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "max_iterations") {
      cfg.max_iterations = static_cast<int>(parse_int(key, value));
    } else if (key == "occlusion") {
      cfg.occlusion = parse_bool(key, value);
    } else if (key == "repeats") {
      cfg.repeats = static_cast<int>(parse_int(key, value));
    } else if (key == "removal_interval") {
      ensure_removal(cfg).interval = static_cast<int>(parse_int(key, value));
    } else if (key == "removal_count") {
      ensure_removal(cfg).count = static_cast<int>(parse_int(key, value));
    } else if (key == "removal_max_events") {
      ensure_removal(cfg).max_events = static_cast<int>(parse_int(key, value));
    } else if (key == "removal_random") {
      ensure_removal(cfg).random_selection = parse_bool(key, value);
    } else if (key == "counts") {
      cfg.scalability_counts.clear();
      for (const auto& item : split_csv(value))
        cfg.scalability_counts.push_back(static_cast<int>(parse_int(key, item)));
    } else if (key == "topologies") {
      cfg.network_topologies.clear();
      for (const auto& item : split_csv(value))
        cfg.network_topologies.push_back(parse_topology(item));
    } else {
      throw SimError("unknown config key '" + key + "'");
    }
  }
  if (cfg.repeats < 1) throw SimError("repeats must be at least 1");
  if (cfg.robots < 1) throw SimError("robots must be at least 1");
  if (cfg.max_iterations < 1) throw SimError("max_iterations must be at least 1");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  return parse_config_text(read_file(path));
}

std::string topology_name(TopologySpec spec) {
  switch (spec.kind) {
    case TopologySpec::Kind::Chain: return "chain";
    case TopologySpec::Kind::None: return "none";
    case TopologySpec::Kind::KNN: return "knn" + std::to_string(spec.k);
  }
  return "?";
}

TopologySpec parse_topology(std::string_view token) {
  if (token == "chain") return TopologySpec::chain();
  if (token == "none") return TopologySpec::none();
  if (token == "knn") return TopologySpec::knn(1);
  std::string digits{token};
  if (digits.starts_with("knn")) digits.erase(0, 3);
  try {
    std::size_t used = 0;
    const int k = std::stoi(digits, &used);
    if (used != digits.size() || k < 0) throw std::invalid_argument(digits);
    return k == 0 ? TopologySpec::none() : TopologySpec::knn(k);
  } catch (const std::exception&) {
    throw SimError("unrecognized topology '" + std::string(token) + "'");
  }
}

ExperimentResult run_single(const ExperimentConfig& cfg) {
  ExperimentResult result;
  auto run = execute_run(cfg, 0, topology_name(cfg.topology), cfg.robots, cfg.topology,
                         cfg.seed, cfg.removal);
  result.records = std::move(run.records);
  result.conditions.push_back(summarize(run.outcome.condition, {run.outcome}));
  result.any_nonterminated = result.conditions.back().any_nonterminated;
  return result;
}

ExperimentResult run_scalability(const ExperimentConfig& cfg,
                                 std::span<const int> robot_counts) {
  ExperimentResult result;
  int run_id = 0;
  for (const int count : robot_counts) {
    const std::string condition = "robots=" + std::to_string(count);
    std::vector<RunOutcome> outcomes;
    for (int rep = 0; rep < cfg.repeats; ++rep) {
      auto run = execute_run(cfg, run_id++, condition, count, cfg.topology,
                             cfg.seed + static_cast<std::uint64_t>(rep), cfg.removal);
      outcomes.push_back(run.outcome);
      result.records.insert(result.records.end(),
                            std::make_move_iterator(run.records.begin()),
                            std::make_move_iterator(run.records.end()));
    }
    result.conditions.push_back(summarize(condition, std::move(outcomes)));
    result.any_nonterminated |= result.conditions.back().any_nonterminated;
  }
  return result;
}

ExperimentResult run_network_effect(const ExperimentConfig& cfg,
                                    std::span<const TopologySpec> topologies) {
  ExperimentResult result;
  int run_id = 0;
  for (const auto topology : topologies) {
    const std::string condition = topology_name(topology);
    std::vector<RunOutcome> outcomes;
    for (int rep = 0; rep < cfg.repeats; ++rep) {
      auto run = execute_run(cfg, run_id++, condition, cfg.robots, topology,
                             cfg.seed + static_cast<std::uint64_t>(rep), cfg.removal);
      outcomes.push_back(run.outcome);
      result.records.insert(result.records.end(),
                            std::make_move_iterator(run.records.begin()),
                            std::make_move_iterator(run.records.end()));
    }
    result.conditions.push_back(summarize(condition, std::move(outcomes)));
    result.any_nonterminated |= result.conditions.back().any_nonterminated;
  }
  return result;
}

ExperimentResult run_robustness(const ExperimentConfig& cfg,
                                const RemovalSchedule& schedule) {
  const int removed_total = schedule.count * schedule.max_events;
  if (removed_total >= cfg.robots)
    throw SimError("removal schedule would eliminate the whole swarm (" +
                   std::to_string(removed_total) + " of " + std::to_string(cfg.robots) + ")");
  const int final_count = cfg.robots - removed_total;

  ExperimentResult result;
  const auto add = [&](int run_id, std::string condition, int robots,
                       const std::optional<RemovalSchedule>& removal) {
    auto run = execute_run(cfg, run_id, condition, robots, cfg.topology, cfg.seed, removal);
    result.records.insert(result.records.end(),
                          std::make_move_iterator(run.records.begin()),
                          std::make_move_iterator(run.records.end()));
    result.conditions.push_back(summarize(std::move(condition), {run.outcome}));
    result.any_nonterminated |= result.conditions.back().any_nonterminated;
  };

  add(0, "static-" + std::to_string(cfg.robots), cfg.robots, std::nullopt);
  add(1, "static-" + std::to_string(final_count), final_count, std::nullopt);
  add(2, "decaying", cfg.robots, schedule);
  return result;
}

void write_csv(std::span<const MetricsRecord> records, std::ostream& sink) {
  std::vector<const MetricsRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const MetricsRecord* a, const MetricsRecord* b) {
                     return std::tie(a->run_id, a->iteration) < std::tie(b->run_id, b->iteration);
                   });

  sink << "run_id,iteration,coverage,alive\n";
  char coverage[32];
  for (const auto* r : sorted) {
    std::snprintf(coverage, sizeof(coverage), "%.6f", r->coverage);
    sink << r->run_id << ',' << r->iteration << ',' << coverage << ',' << r->alive << '\n';
  }
  if (!sink) throw SinkFailure("CSV sink failed while writing");
}

std::string format_table(const ExperimentResult& result) {
  std::ostringstream out;
  out << "condition | mean_iterations | min | max | per_run\n";
  char mean[32];
  for (const auto& c : result.conditions) {
    std::snprintf(mean, sizeof(mean), "%.2f", c.mean_iterations);
    out << c.condition << " | " << mean << " | " << c.min_iterations << " | "
        << c.max_iterations << " | ";
    for (std::size_t i = 0; i < c.runs.size(); ++i) {
      if (i > 0) out << ',';
      out << c.runs[i].iterations;
      if (!c.runs[i].completed) out << "(nonterminated)";
    }
    out << '\n';
  }
  if (result.any_nonterminated)
    out << "warning: at least one run hit max_iterations before full coverage\n";
  return out.str();
}

}  // namespace swarmmap
