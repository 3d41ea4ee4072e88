// Command-line front end: run a trial, export heatmap data, replay a trace.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rae/trial/analysis.hpp"
#include "rae/trial/scenario.hpp"
#include "rae/trial/trial.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIncomplete = 2;
constexpr int kExitConfig = 3;

int run(const std::string& scenario_path, std::uint64_t seed, int rollouts, const std::string& fault_script,
        const std::string& log_dir) {
  rae::trial::Scenario scenario;
  rae::trial::TrialOptions options;
  try {
    scenario = rae::trial::load_scenario(scenario_path);
    if (!fault_script.empty()) options.faults = rae::trial::load_fault_script(fault_script);
  } catch (const rae::trial::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  options.seed = seed;
  if (rollouts > 0) options.budget = rollouts;
  if (!log_dir.empty()) options.log_dir = log_dir;

  const auto report = rae::trial::run_trial(scenario, options);
  std::cout << rae::trial::report_json(report, true) << '\n';
  if (!report.engine_fault.empty()) std::cerr << "engine fault: " << report.engine_fault << '\n';
  return report.completed ? kExitOk : kExitIncomplete;
}

int heatmap(const std::string& log, const std::string& out_path) {
  try {
    const auto calls = rae::trial::clusters_from_log(rae::trial::read_lines(log));
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << '\n';
      return kExitConfig;
    }
    out << rae::trial::heatmap_csv(calls);
    std::cout << calls.size() << " planner calls written to " << out_path << '\n';
  } catch (const rae::trial::LogError& e) {
    std::cerr << "log error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int replay(const std::string& trace) {
  try {
    const auto result = rae::trial::replay_trace(rae::trial::read_lines(trace));
    for (const auto& v : result.violations) std::cout << "violation: " << v << '\n';
    std::cout << result.events << " events, " << result.dispatches << " dispatches, "
              << result.violations.size() << " violations\n";
    return result.ok() ? kExitOk : kExitIncomplete;
  } catch (const rae::trial::LogError& e) {
    std::cerr << "log error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acting and planning trials for the object-collection domain"};
  app.require_subcommand(1);

  std::string scenario;
  std::uint64_t seed = 0;
  int rollouts = 0;
  std::string fault_script;
  std::string log_dir;
  auto* run_cmd = app.add_subcommand("run", "Run one trial and print its report");
  run_cmd->add_option("--scenario", scenario, "Scenario JSON file")->required();
  run_cmd->add_option("--seed", seed, "Random seed");
  run_cmd->add_option("--rollouts", rollouts, "Rollout budget per planner call (default: scenario value)")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--fault-script", fault_script, "Fault script replacing the scenario's faults");
  run_cmd->add_option("--log-dir", log_dir, "Directory for trace, rollout and report files");

  std::string log;
  std::string out;
  auto* heat_cmd = app.add_subcommand("heatmap", "Cluster a rollout log into heatmap CSV");
  heat_cmd->add_option("--log", log, "rollouts.jsonl from a run")->required();
  heat_cmd->add_option("--out", out, "CSV output file")->required();

  std::string trace;
  auto* replay_cmd = app.add_subcommand("replay", "Re-verify protocol invariants over a trace");
  replay_cmd->add_option("--trace", trace, "trace.jsonl from a run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run_cmd) return run(scenario, seed, rollouts, fault_script, log_dir);
  if (*heat_cmd) return heatmap(log, out);
  return replay(trace);
}
