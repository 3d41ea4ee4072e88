#include "doctest.h"
#include "fixtures.hpp"
#include "sim_props.hpp"

using namespace rae;
using namespace rae::sim;

namespace {

CommandCall move_to(const std::string& from, const std::string& to) {
  return {"move", {std::string("r1"), from, to}};
}

}  // namespace

TEST_CASE("camera pose and frustum basics") {
  CameraModel cam;
  KinematicsConfig kin;
  const auto pose = camera_pose_from_joints(0.0, 0.0, Pose2D(0, 0, 0), kin);
  CHECK(pose.translation().isApprox(Eigen::Vector3d(0.3, 0, 1.3)));
  const Eigen::Vector3d ahead(1.5, 0, 1.3);
  CHECK(frustum_contains(pose, cam, std::span(&ahead, 1)));
  const Eigen::Vector3d behind(-1.0, 0, 1.3);
  CHECK_FALSE(frustum_contains(pose, cam, std::span(&behind, 1)));
  const Eigen::Vector3d too_close(0.4, 0, 1.3);
  CHECK_FALSE(frustum_contains(pose, cam, std::span(&too_close, 1)));
  CHECK_THROWS_AS(camera_pose_from_joints(5.0, 0.0, Pose2D(), kin), std::out_of_range);

  // Positive lift tilts the view down.
  const auto down = camera_pose_from_joints(0.0, 0.7, Pose2D(), kin);
  CHECK(down.linear().col(0).z() < 0.0);
  // Rotating the robot by a quarter turn moves the optical axis with it.
  const auto turned = camera_pose_from_joints(0.0, 0.0, Pose2D(0, 0, std::numbers::pi / 2), kin);
  CHECK(turned.linear().col(0).isApprox(Eigen::Vector3d::UnitY(), 1e-12));

  const auto v = bbox_vertices(Pose2D(1, 2, 0), 0.5, BoundingBox{0.2, 0.4, 0.1});
  CHECK(v[0].isApprox(Eigen::Vector3d(0.9, 1.8, 0.5)));
  CHECK(v[7].isApprox(Eigen::Vector3d(1.1, 2.2, 0.6)));
}

TEST_CASE("frustum properties on random pairs") {
  const auto out = props::frustum_properties(200, 42);
  INFO(out.first_failure);
  CHECK(out.pairs == 200);
  CHECK(out.failures == 0);
}

TEST_CASE("fault script semantics") {
  const auto table = CommandTable::defaults();
  SUBCASE("fail_until_attempt 4 fails attempts 1-3") {
    FaultEntry e;
    e.effect = FaultEntry::Effect::kFailUntilAttempt;
    e.command = "move";
    e.args = {{"l2", "tb1"}};
    e.attempt = 4;
    FaultScript fs({e});
    CHECK_FALSE(fs.on_dispatch(move_to("start", "tb2"), table).fail);
    for (int i = 1; i <= 3; ++i) CHECK(fs.on_dispatch(move_to("start", "tb1"), table).fail);
    CHECK_FALSE(fs.on_dispatch(move_to("start", "tb1"), table).fail);
    CHECK_FALSE(fs.on_dispatch(move_to("start", "tb1"), table).fail);
  }
  SUBCASE("fail over an ordinal window") {
    FaultEntry e;
    e.command = "set_arm_joints";
    e.from = 2;
    e.to = 3;
    FaultScript fs({e});
    const CommandCall c{"set_arm_joints", {std::string("r1"), 0.0, 0.7}};
    std::vector<bool> got;
    for (int i = 0; i < 5; ++i) got.push_back(fs.on_dispatch(c, table).fail);
    CHECK(got == std::vector<bool>{false, true, true, false, false});
  }
  SUBCASE("suppress detection") {
    FaultEntry e;
    e.effect = FaultEntry::Effect::kSuppressDetection;
    e.object = "mustard";
    FaultScript fs({e});
    const auto v = fs.on_dispatch({"perceive_table", {std::string("r1"), std::string("tb2"), 0.0, 0.7}}, table);
    CHECK_FALSE(v.fail);
    CHECK(v.suppressed.count("mustard"));
    CHECK(fs.on_dispatch(move_to("start", "tb2"), table).suppressed.empty());
  }
}

TEST_CASE("suppressed object is never detected by the executor") {
  const auto sc = fixtures::study("study_3_3_perception_fault.json");
  const auto model = fixtures::noiseless(sc);
  WorldState belief = collection::initial_belief(*model, sc.start, sc.robot);
  Executor exec(*model, belief, sc.true_poses, FaultScript(sc.faults), 1);
  CHECK(exec.execute({1, move_to("start", "tb2")}).status == acting::CommandStatus::kSuccess);
  for (double pan : model->perception.pan_values) {
    for (double lift : model->perception.lift_values) {
      exec.execute({2, {"perceive_table", {std::string("r1"), std::string("tb2"), pan, lift}}});
    }
  }
  CHECK_FALSE(exec.reported().pose_of("mustard"));
  CHECK(exec.truth().pose_of("mustard"));
}

TEST_CASE("preconditions") {
  const auto sc = fixtures::study();
  const auto model = fixtures::certain(sc);
  WorldState s = fixtures::observed_state(sc);
  const Value r = std::string("r1");
  CHECK(precondition_failure(*model, {"grasp", {r, std::string("power_drill"), std::string("tb1")}}, s));
  CHECK(precondition_failure(*model, {"perceive_table", {r, std::string("tb1"), 0.0, 0.7}}, s));
  CHECK(precondition_failure(*model, {"place", {r, std::string("power_drill"), std::string("target")}}, s));
  CHECK_FALSE(precondition_failure(*model, move_to("start", "tb1"), s));
  CHECK(precondition_failure(*model, move_to("start", "nowhere"), s));
  CHECK(precondition_failure(*model, {"set_arm_joints", {r, 9.0, 0.0}}, s));
  CHECK_THROWS(precondition_failure(*model, {"fly", {r}}, s));
  CHECK_THROWS(precondition_failure(*model, {"move", {r}}, s));

  Rng rng(1);
  s = simulate_command(*model, move_to("start", "tb1"), s, rng).next;
  CHECK_FALSE(precondition_failure(*model, {"grasp", {r, std::string("power_drill"), std::string("tb1")}}, s));
  CHECK(precondition_failure(*model, {"grasp", {r, std::string("mustard"), std::string("tb2")}}, s));
}

TEST_CASE("simulated twin: pick, store, move the box and place") {
  const auto sc = fixtures::study();
  const auto model = fixtures::certain(sc);
  WorldState s = fixtures::observed_state(sc);
  Rng rng(1);
  const Value r = std::string("r1");
  auto run = [&](CommandCall c) {
    auto out = simulate_command(*model, c, s, rng);
    INFO(c.key());
    REQUIRE(out.success);
    CHECK(out.next.time_passed == s.time_passed + model->commands.get(c.name).cost);
    CHECK(invariant_violations(out.next).empty());
    s = out.next;
    return out.collected;
  };
  run(move_to("start", "tb1"));
  run({"grasp", {r, std::string("power_drill"), std::string("tb1")}});
  CHECK(s.holding == "power_drill");
  run({"store_object", {r, std::string("tb1"), std::string("power_drill"), std::string("box")}});
  CHECK(s.box_of("power_drill") == "box");
  run({"grasp", {r, std::string("box"), std::string("tb1")}});
  run(move_to("tb1", "target"));
  const auto got = run({"place", {r, std::string("box"), std::string("target")}});
  CHECK(got == std::vector<ObjectId>{"box", "power_drill"});
  CHECK(s.table_of("box") == "target");
  CHECK(s.box_of("power_drill") == "box");
}

TEST_CASE("twin consistency on random reachable states") {
  const auto sc = fixtures::study();
  const auto model = fixtures::certain(sc);
  const auto out = props::twin_consistency(*model, fixtures::observed_state(sc), 25, 9);
  INFO(out.first_mismatch);
  CHECK(out.mismatches == 0);
  CHECK(out.every_command_succeeded());
  CHECK(out.comparisons == 25 * 8);
}
