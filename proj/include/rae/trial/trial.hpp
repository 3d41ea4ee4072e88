#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rae/acting/engine.hpp"
#include "rae/trial/scenario.hpp"

namespace rae::trial {

struct TrialOptions {
  std::uint64_t seed = 0;
  // Overrides the scenario's rollout budget.
  std::optional<int> budget;
  // Replaces the scenario's fault script.
  std::optional<std::vector<sim::FaultEntry>> faults;
  // When set, trace.jsonl, timing.jsonl, rollouts.jsonl and report.json are
  // written here.
  std::optional<std::filesystem::path> log_dir;
  std::int64_t max_engine_steps = 10'000'000;
};

/// Summary of one planner call for the report.
struct CallSummary {
  int index = 0;
  std::string task;
  std::int64_t time = 0;
  std::string chosen;
  bool defaulted = false;
  int candidates = 0;
  int rollouts = 0;
  int clusters = 0;
  int zero_utility_rollouts = 0;
  double best_utility = 0.0;
  double wall_seconds = 0.0;
};

struct TrialReport {
  std::string scenario;
  std::uint64_t seed = 0;
  int budget = 0;
  bool completed = false;
  double collected_utility = 0.0;
  int objects_collected = 0;
  int objects_total = 0;
  std::vector<ObjectId> collected;
  // Discrete acting time: the final time counter.
  std::int64_t acting_time = 0;
  // Wall-clock seconds; not reproducible across runs.
  double planning_time_s = 0.0;
  double acting_wall_s = 0.0;
  acting::EngineStats stats;
  std::vector<CallSummary> calls;
  // Non-empty when the engine halted on an internal inconsistency.
  std::string engine_fault;

  std::vector<std::string> trace;
  std::vector<std::string> timing;
  std::vector<std::string> rollout_log;
  upom::UtilityTrace executed;
  WorldState final_belief;
  WorldState executor_reported;
  WorldState executor_truth;
};

/// Runs collect_all_objs on `scenario` with the engine in this thread and the
/// executor in a worker thread, until the agenda is empty.
TrialReport run_trial(const Scenario& scenario, const TrialOptions& options);

/// JSON rendering of the report. Wall-clock fields are included only when
/// `with_timing` is set; without them the output is reproducible per seed.
std::string report_json(const TrialReport& report, bool with_timing);

}  // namespace rae::trial
