#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rae/core/geometry.hpp"
#include "rae/model/value.hpp"
#include "rae/sim/camera.hpp"

namespace rae::sim {

struct CommandSpec {
  std::string name;
  std::vector<std::string> params;
  std::int64_t cost = 1;
  // Success probability used by the simulated twin. grasp uses the grasped
  // object's own probability instead.
  double success_probability = 1.0;
};

/// The eight commands and their cost/probability table.
class CommandTable {
 public:
  /// Default costs: move 5, perceive_table 3, set_arm_joints 1,
  /// read_current_pose 1, grasp 4, place 4, store_object 4,
  /// move_arm_to_pose 2; all probabilities 1.
  static CommandTable defaults();

  const CommandSpec& get(const std::string& name) const;
  CommandSpec& mutable_get(const std::string& name);
  bool contains(const std::string& name) const { return specs_.count(name) > 0; }
  std::vector<std::string> names() const;

  /// Named view of a call's arguments. Throws on an arity mismatch.
  std::map<std::string, Value> named_args(const CommandCall& call) const;

 private:
  std::map<std::string, CommandSpec> specs_;
};

struct PerceptionConfig {
  double d_max = 1.2;
  std::vector<double> pan_values{-0.5, 0.0, 0.5};
  std::vector<double> lift_values{0.7, 1.0};
  double detection_confidence_threshold = 0.5;
  // Executor-side jitter on perceived poses.
  double noise_sigma = 0.005;

  void validate() const;
};

/// Everything the commands need to know about the world besides the state.
struct WorldModel {
  ScenarioGeometry geometry;
  PerceptionConfig perception;
  CameraModel camera;
  KinematicsConfig kinematics;
  CommandTable commands = CommandTable::defaults();
  double reach_radius = 0.8;
  // Named arm postures for move_arm_to_pose. "observe" is the wide-angle
  // posture used while exploring.
  std::map<std::string, ArmJoints> arm_poses{{"observe", {0.0, 0.7}}, {"carry", {0.0, 0.0}}};

  void validate() const;

  /// Height of the surface under (x, y), 0 off-table.
  double surface_height(double x, double y) const;

  /// Whether object `o`, assumed at `pose`, is fully visible with the given
  /// joints from the robot pose.
  bool object_in_view(const ObjectId& o, const Pose2D& pose, const Pose2D& robot, double pan, double lift) const;
};

}  // namespace rae::sim
