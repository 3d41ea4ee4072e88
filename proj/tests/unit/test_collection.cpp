#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "rae/upom/simulated_engine.hpp"

using namespace rae;

namespace {

// Runs `task` through the simulated engine with certain outcomes, preferring
// instances whose method name matches `prefer` and otherwise the first.
struct Run {
  bool ok = false;
  std::vector<upom::PathStep> path;
  WorldState end;
  double utility = 0.0;
};

Run run_task(const trial::Scenario& sc, const TaskSignature& task, WorldState start, const std::string& prefer) {
  auto model = fixtures::certain(sc);
  auto domain = collection::build_collection_domain(model);
  upom::ChooseFn choose = [&](const TaskSignature&, const WorldState&, const std::vector<MethodInstance>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].name() == prefer) return i;
    }
    return std::size_t{0};
  };
  Rng rng(1);
  upom::OutcomeFn outcome = [&](const CommandCall& call, const WorldState& s) {
    return sim::simulate_command(*model, call, s, rng);
  };
  upom::SimulatedEngine engine(domain.methods, std::move(start), outcome, choose, {sc.utility.eta, 10'000});
  Run r;
  r.ok = engine.run(task);
  r.path = engine.path();
  r.end = engine.state();
  r.utility = upom::utility(engine.trace(), sc.utility);
  return r;
}

int count(const std::vector<upom::PathStep>& path, const std::string& cmd, const std::string& dest = "") {
  return static_cast<int>(std::count_if(path.begin(), path.end(), [&](const upom::PathStep& p) {
    return p.command == cmd && (dest.empty() || as_string(p.args.back()) == dest);
  }));
}

const TaskSignature kCollectAll{"collect_all_objs", {std::string("r1")}};

}  // namespace

TEST_CASE("initial belief") {
  const auto sc = fixtures::study();
  const auto s = collection::initial_belief(*sc.model, sc.start, sc.robot);
  for (const auto& [o, p] : s.object_poses) CHECK_FALSE(p);
  CHECK(s.not_visited == std::set<TableId>{"tb1", "tb2"});
  CHECK(s.classifications.at("box") == ObjectClass::kBox);
  CHECK(s.symbolic_facts.empty());
  CHECK(invariant_violations(s).empty());
  CHECK(collection::tables_by_distance(*sc.model, sc.start) == std::vector<TableId>{"tb1", "tb2"});
  CHECK(collection::tables_by_distance(*sc.model, Pose2D(2, 3, 0)) == std::vector<TableId>{"tb2", "tb1"});
}

TEST_CASE("box_available") {
  const auto sc = fixtures::study();
  WorldState s = fixtures::observed_state(sc);
  CHECK_FALSE(collection::box_available(s, "tb1"));
  CHECK_FALSE(collection::box_available(s, "tb2"));
  s.object_poses["screwdriver"] = s.object_poses["box"];
  refresh_facts(s, sc.model->geometry);
  CHECK(collection::box_available(s, "tb1") == "box");
  s.holding = "box";
  refresh_facts(s, sc.model->geometry);
  CHECK_FALSE(collection::box_available(s, "tb1"));
}

TEST_CASE("collect_obj instances on a table with a box") {
  const auto sc = fixtures::study();
  const auto domain = collection::build_collection_domain(sc.model);
  const auto s = fixtures::observed_state(sc);
  const auto inst =
      applicable_instances(TaskSignature{"collect_obj", {std::string("r1"), std::string("tb1")}}, s, domain.methods);
  std::vector<std::string> keys;
  for (const auto& i : inst) keys.push_back(i.key());
  CHECK(keys == std::vector<std::string>{"collect_obj_via_box(r1,tb1,box)", "collect_obj_direct(r1,tb1,multimeter)",
                                         "collect_obj_direct(r1,tb1,power_drill)",
                                         "collect_obj_direct(r1,tb1,screwdriver)"});
  const auto tb2 =
      applicable_instances(TaskSignature{"collect_obj", {std::string("r1"), std::string("tb2")}}, s, domain.methods);
  REQUIRE(tb2.size() == 1);
  CHECK(tb2[0].name() == "collect_obj_direct");
}

TEST_CASE("both collect_obj routes bring every object to the target") {
  const auto sc = fixtures::study();
  const auto start = fixtures::observed_state(sc);
  const auto via_box = run_task(sc, kCollectAll, start, "collect_obj_via_box");
  const auto direct = run_task(sc, kCollectAll, start, "collect_obj_direct");
  for (const auto* r : {&via_box, &direct}) {
    REQUIRE(r->ok);
    for (const auto& o : {"power_drill", "screwdriver", "multimeter", "mustard"}) {
      CHECK(r->end.collected.at("target").count(o));
      const bool at_target = r->end.table_of(o) == "target" || (r->end.box_of(o) && r->end.table_of("box") == "target");
      CHECK(at_target);
    }
    CHECK(invariant_violations(r->end).empty());
  }
  CHECK(count(via_box.path, "move", "target") < count(direct.path, "move", "target"));
  CHECK(count(via_box.path, "store_object") == 3);
  CHECK(count(direct.path, "store_object") == 0);
  CHECK(via_box.end.time_passed < direct.end.time_passed);
  CHECK(via_box.utility > direct.utility);
}

TEST_CASE("explore visits each non-target table once") {
  const auto sc = fixtures::study("study_2_1_spread_out.json");
  const auto start = collection::initial_belief(*sc.model, sc.start, sc.robot);
  const auto r = run_task(sc, TaskSignature{"explore", {std::string("r1")}}, start, "");
  REQUIRE(r.ok);
  CHECK(count(r.path, "move") == 3);
  CHECK(count(r.path, "perceive_table") == 3);
  for (const auto& tb : {"tb1", "tb2", "tb3"}) CHECK(count(r.path, "move", tb) == 1);
  CHECK(count(r.path, "move", "target") == 0);
  CHECK(r.end.not_visited.size() == 3);
}

TEST_CASE("drive skips the move when already docked") {
  const auto sc = fixtures::study();
  auto s = fixtures::observed_state(sc);
  s.robot_pose = sc.model->geometry.table("tb1").base_pose;
  const auto r = run_task(sc, TaskSignature{"drive", {std::string("r1"), std::string("tb1")}}, s, "");
  CHECK(r.ok);
  CHECK(r.path.empty());
}
