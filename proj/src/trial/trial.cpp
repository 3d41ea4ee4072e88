#include "rae/trial/trial.hpp"

#include <chrono>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "rae/collection/domain.hpp"
#include "rae/sim/commands.hpp"
#include "rae/sim/executor.hpp"

namespace rae::trial {

using nlohmann::json;

namespace {

std::string rollout_line(const acting::PlannerCall& call, int budget) {
  json j{{"call", call.index},
         {"task", call.task.key()},
         {"time", call.time},
         {"chosen", call.chosen},
         {"defaulted", call.defaulted},
         {"budget", budget}};
  json cands = json::array();
  for (std::size_t i = 0; i < call.result.candidates.size(); ++i) {
    const auto& st = call.result.root_stats.at(i);
    cands.push_back({{"method", call.result.candidates[i].key()}, {"n", st.n}, {"q", st.q}});
  }
  j["candidates"] = std::move(cands);
  json rollouts = json::array();
  for (const auto& r : call.result.records) {
    rollouts.push_back({{"path", r.path_key()},
                        {"utility", r.utility},
                        {"terminated_by", upom::to_string(r.terminated_by)},
                        {"root", r.root_candidate},
                        {"end_time", r.end_time}});
  }
  j["rollouts"] = std::move(rollouts);
  json clusters = json::array();
  for (const auto& c : upom::cluster_rollouts(call.result.records)) {
    clusters.push_back({{"path", c.path_key}, {"size", c.size}, {"utility", c.utility}, {"success", c.success}});
  }
  j["clusters"] = std::move(clusters);
  return j.dump();
}

void write_lines(const std::filesystem::path& p, const std::vector<std::string>& lines) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace

TrialReport run_trial(const Scenario& scenario, const TrialOptions& options) {
  const auto wall_start = std::chrono::steady_clock::now();
  const sim::WorldModel& model = *scenario.model;

  collection::CollectionDomain domain = collection::build_collection_domain(scenario.model, scenario.drive_retries);
  sim::CollectionSimulator simulator(model);
  upom::PlanningDomain planning{&domain.methods, &simulator, scenario.utility};

  acting::EngineConfig config;
  config.planner = scenario.planner;
  if (options.budget) config.planner.budget = *options.budget;
  config.seed = options.seed;

  TrialReport report;
  report.scenario = scenario.name;
  report.seed = options.seed;
  report.budget = config.planner.budget;
  for (const auto& [id, spec] : model.geometry.objects) {
    if (spec.object_class != ObjectClass::kBox) ++report.objects_total;
  }

  const WorldState initial = collection::initial_belief(model, scenario.start, scenario.robot);
  acting::QueueTriple queues;
  sim::Executor executor(model, initial, scenario.true_poses,
                         sim::FaultScript(options.faults ? *options.faults : scenario.faults),
                         mix_seed(options.seed, 0x65786563ULL));
  acting::Engine engine(domain.methods, planning, initial, queues, config);
  engine.set_plan_observer([&](const acting::PlannerCall& call) {
    report.rollout_log.push_back(rollout_line(call, config.planner.budget));
    CallSummary s;
    s.index = call.index;
    s.task = call.task.key();
    s.time = call.time;
    s.chosen = call.chosen;
    s.defaulted = call.defaulted;
    s.candidates = static_cast<int>(call.result.candidates.size());
    s.rollouts = static_cast<int>(call.result.records.size());
    s.clusters = static_cast<int>(upom::cluster_rollouts(call.result.records).size());
    for (const auto& r : call.result.records) {
      if (r.utility == 0.0) ++s.zero_utility_rollouts;
      s.best_utility = std::max(s.best_utility, r.utility);
    }
    s.wall_seconds = call.wall_seconds;
    report.calls.push_back(std::move(s));
  });

  {
    std::jthread worker([&] { executor.serve(queues.commands, queues.statuses); });
    try {
      engine.submit_task(TaskSignature{"collect_all_objs", {scenario.robot}});
      std::int64_t steps = 0;
      while (!engine.idle()) {
        if (++steps > options.max_engine_steps) throw acting::EngineFault("engine step limit exceeded");
        engine.step();
        if (engine.blocked()) queues.statuses.wait();
      }
    } catch (const acting::EngineFault& e) {
      report.engine_fault = e.what();
    }
    queues.commands.close();
  }

  const auto& done = engine.completions();
  report.completed = report.engine_fault.empty() && !done.empty() && done.front().success;
  report.executed = engine.executed_trace();
  report.collected_utility = upom::utility(report.executed, scenario.utility);
  report.final_belief = engine.state();
  report.executor_reported = executor.reported();
  report.executor_truth = executor.truth();
  auto it = report.final_belief.collected.find(model.geometry.target_table);
  if (it != report.final_belief.collected.end()) {
    for (const auto& o : it->second) {
      if (!report.final_belief.is_box(o)) report.collected.push_back(o);
    }
  }
  report.objects_collected = static_cast<int>(report.collected.size());
  report.acting_time = report.final_belief.time_passed;
  report.planning_time_s = engine.planning_seconds();
  report.stats = engine.stats();
  report.trace = engine.log().lines();
  report.timing = engine.log().timing();
  report.acting_wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  if (options.log_dir) {
    std::filesystem::create_directories(*options.log_dir);
    write_lines(*options.log_dir / "trace.jsonl", report.trace);
    write_lines(*options.log_dir / "timing.jsonl", report.timing);
    write_lines(*options.log_dir / "rollouts.jsonl", report.rollout_log);
    std::ofstream out(*options.log_dir / "report.json", std::ios::binary);
    out << report_json(report, true) << '\n';
  }
  return report;
}

std::string report_json(const TrialReport& r, bool with_timing) {
  json j{{"scenario", r.scenario},
         {"seed", r.seed},
         {"budget", r.budget},
         {"completed", r.completed},
         {"collected_utility", r.collected_utility},
         {"objects_collected", {{"count", r.objects_collected}, {"total", r.objects_total}}},
         {"collected", r.collected},
         {"acting_time", r.acting_time},
         {"planner_calls", r.stats.planner_calls},
         {"default_choices", r.stats.default_choices},
         {"retries", r.stats.retries},
         {"switches", r.stats.switches},
         {"dispatches", r.stats.dispatches}};
  if (!r.engine_fault.empty()) j["engine_fault"] = r.engine_fault;
  json calls = json::array();
  for (const auto& c : r.calls) {
    json cj{{"call", c.index},
            {"task", c.task},
            {"time", c.time},
            {"chosen", c.chosen},
            {"defaulted", c.defaulted},
            {"candidates", c.candidates},
            {"rollouts", c.rollouts},
            {"clusters", c.clusters},
            {"zero_utility_rollouts", c.zero_utility_rollouts},
            {"best_utility", c.best_utility}};
    if (with_timing) cj["wall_seconds"] = c.wall_seconds;
    calls.push_back(std::move(cj));
  }
  j["calls"] = std::move(calls);
  json steps = json::array();
  for (const auto& s : r.executed.steps) {
    json sj{{"action", s.action}, {"cost", s.cost}};
    if (!s.collected.empty()) sj["collected"] = s.collected;
    steps.push_back(std::move(sj));
  }
  j["executed"] = std::move(steps);
  if (with_timing) j["timing"] = {{"planning_time_s", r.planning_time_s}, {"acting_wall_s", r.acting_wall_s}};
  return j.dump(2);
}

}  // namespace rae::trial
