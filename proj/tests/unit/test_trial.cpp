#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "rae/trial/analysis.hpp"
#include "rae/trial/trial.hpp"

using namespace rae;
using namespace rae::trial;
using nlohmann::json;

namespace {

json base_doc() {
  std::ifstream in(fixtures::scenario_path("study_1_1_box.json"));
  return json::parse(in);
}

std::string parse_error(const json& doc) {
  try {
    parse_scenario(doc.dump());
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("every shipped scenario loads") {
  for (const auto& entry : std::filesystem::directory_iterator(RAE_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().string());
    CHECK_NOTHROW(load_scenario(entry.path()));
  }
  const auto sc = fixtures::study();
  CHECK(sc.planner.budget == 100);
  CHECK(sc.utility.eta == sc.model->geometry.time_limit);
  CHECK(sc.utility.reward("power_drill") == 15.0);
  CHECK(sc.true_poses.size() == 5);
}

TEST_CASE("scenario loader rejects bad documents") {
  auto doc = base_doc();
  CHECK(parse_error(doc).empty());

  auto extra = doc;
  extra["colour"] = "red";
  CHECK(parse_error(extra).find("colour") != std::string::npos);

  auto nested = doc;
  nested["tables"][0]["legs"] = 4;
  CHECK(parse_error(nested).find("legs") != std::string::npos);

  auto wrong_type = doc;
  wrong_type["time_limit"] = "soon";
  CHECK_FALSE(parse_error(wrong_type).empty());

  auto floating = doc;
  floating["objects"][0]["pose"] = {10.0, 10.0, 0.0};
  CHECK_FALSE(parse_error(floating).empty());

  auto bad_class = doc;
  bad_class["objects"][0]["class"] = "gadget";
  CHECK_FALSE(parse_error(bad_class).empty());

  auto bad_target = doc;
  bad_target["target_table"] = "nowhere";
  CHECK_FALSE(parse_error(bad_target).empty());

  auto bad_utility = doc;
  bad_utility["utility"]["c1"] = 0.9;
  CHECK_FALSE(parse_error(bad_utility).empty());

  CHECK_THROWS_AS(parse_scenario("{not json"), ConfigError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/file.json"), ConfigError);
}

TEST_CASE("fault scripts") {
  const auto f = parse_fault_script(
      R"({"faults":[{"effect":"fail_until_attempt","command":"move","args":{"l2":"tb2"},"attempt":2},
                    {"effect":"suppress_detection","object":"mustard"}]})");
  REQUIRE(f.size() == 2);
  CHECK(f[0].effect == sim::FaultEntry::Effect::kFailUntilAttempt);
  CHECK(f[0].args.at("l2") == "tb2");
  CHECK(f[1].object == "mustard");
  CHECK_THROWS_AS(parse_fault_script(R"({"faults":[{"effect":"explode"}]})"), ConfigError);
  CHECK_THROWS_AS(parse_fault_script(R"({"faults":[],"extra":1})"), ConfigError);
}

TEST_CASE("trial runs are reproducible and self-consistent") {
  const auto sc = fixtures::study();
  TrialOptions opt;
  opt.seed = 4;
  opt.budget = 30;
  const auto a = run_trial(sc, opt);
  const auto b = run_trial(sc, opt);
  REQUIRE(a.engine_fault.empty());
  CHECK(a.completed);
  CHECK(a.trace == b.trace);
  CHECK(a.rollout_log == b.rollout_log);
  CHECK(report_json(a, false) == report_json(b, false));
  CHECK(a.budget == 30);
  CHECK(a.objects_total == 4);
  CHECK(a.acting_time == a.final_belief.time_passed);
  CHECK(reported_digest(a.final_belief) == reported_digest(a.executor_reported));
  CHECK(a.collected_utility == doctest::Approx(upom::utility(a.executed, sc.utility)));

  const auto replay = replay_trace(a.trace);
  INFO((replay.violations.empty() ? "" : replay.violations.front()));
  CHECK(replay.ok());
  CHECK(static_cast<int>(replay.dispatches) == a.stats.dispatches);

  const auto calls = clusters_from_log(a.rollout_log);
  CHECK(static_cast<int>(calls.size()) == a.stats.planner_calls);
  for (const auto& c : calls) {
    int total = 0;
    for (const auto& cl : c.clusters) total += cl.size;
    CHECK(total == 30);
  }
  const auto csv = heatmap_csv(calls);
  CHECK(csv.rfind("call,task,cluster,size,utility,success,clusters_in_call\n", 0) == 0);
}

TEST_CASE("replay flags tampered traces") {
  const auto sc = fixtures::study();
  TrialOptions opt;
  opt.budget = 5;
  const auto r = run_trial(sc, opt);
  auto dropped = r.trace;
  dropped.erase(dropped.begin() + 3);
  CHECK_FALSE(replay_trace(dropped).ok());

  std::vector<std::string> forged = {
      R"({"seq":0,"event":"dispatch","entry":1,"id":1,"command":"move","args":[],"time":0})",
      R"({"seq":1,"event":"status","id":7,"status":"success","cost":1,"time":1})"};
  const auto out = replay_trace(forged);
  CHECK(out.violations.size() >= 2);
}

TEST_CASE("log directory output") {
  const auto dir = std::filesystem::temp_directory_path() / "rae_trial_test_logs";
  std::filesystem::remove_all(dir);
  TrialOptions opt;
  opt.budget = 5;
  opt.log_dir = dir;
  const auto sc = fixtures::study("study_1_2_no_box.json");
  const auto r = run_trial(sc, opt);
  for (const auto* f : {"trace.jsonl", "timing.jsonl", "rollouts.jsonl", "report.json"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  CHECK(read_lines((dir / "trace.jsonl").string()) == r.trace);
  const auto rep = json::parse(std::ifstream(dir / "report.json"));
  CHECK(rep.contains("timing"));
  CHECK_FALSE(json::parse(report_json(r, false)).contains("timing"));
  std::filesystem::remove_all(dir);
}
