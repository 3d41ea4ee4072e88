#include "rae/sim/world_model.hpp"

#include <stdexcept>

namespace rae::sim {

CommandTable CommandTable::defaults() {
  CommandTable t;
  auto add = [&t](std::string name, std::vector<std::string> params, std::int64_t cost) {
    t.specs_[name] = CommandSpec{name, std::move(params), cost, 1.0};
  };
  add("move", {"r", "l1", "l2"}, 5);
  add("perceive_table", {"r", "tb", "pan", "lift"}, 3);
  add("set_arm_joints", {"r", "pan", "lift"}, 1);
  add("read_current_pose", {"r", "o", "pan", "lift"}, 1);
  add("grasp", {"r", "o", "from_what"}, 4);
  add("place", {"r", "o", "on_what"}, 4);
  add("store_object", {"r", "tb", "o", "box"}, 4);
  add("move_arm_to_pose", {"r", "arm_pose"}, 2);
  return t;
}

const CommandSpec& CommandTable::get(const std::string& name) const {
  auto it = specs_.find(name);
  if (it == specs_.end()) throw std::out_of_range("unknown command '" + name + "'");
  return it->second;
}

CommandSpec& CommandTable::mutable_get(const std::string& name) {
  auto it = specs_.find(name);
  if (it == specs_.end()) throw std::out_of_range("unknown command '" + name + "'");
  return it->second;
}

std::vector<std::string> CommandTable::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : specs_) out.push_back(name);
  return out;
}

std::map<std::string, Value> CommandTable::named_args(const CommandCall& call) const {
  const CommandSpec& spec = get(call.name);
  if (spec.params.size() != call.args.size()) {
    throw std::invalid_argument("command " + call.key() + " expects " + std::to_string(spec.params.size()) +
                                " arguments");
  }
  std::map<std::string, Value> out;
  for (std::size_t i = 0; i < spec.params.size(); ++i) out[spec.params[i]] = call.args[i];
  return out;
}

void PerceptionConfig::validate() const {
  if (pan_values.empty() || lift_values.empty()) throw std::invalid_argument("pan and lift value sets must be nonempty");
  if (!(d_max > 0.0)) throw std::invalid_argument("d_max must be positive");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise_sigma must be >= 0");
}

void WorldModel::validate() const {
  geometry.validate();
  perception.validate();
  camera.validate();
  if (!(reach_radius > 0.0)) throw std::invalid_argument("reach_radius must be positive");
  for (const auto& name : commands.names()) {
    const auto& spec = commands.get(name);
    if (spec.cost < 1) throw std::invalid_argument("command " + name + " must cost at least 1");
    if (!(spec.success_probability >= 0.0 && spec.success_probability <= 1.0)) {
      throw std::invalid_argument("command " + name + ": success_probability outside [0, 1]");
    }
  }
  for (double p : perception.pan_values) {
    for (double l : perception.lift_values) {
      if (!kinematics.joints_in_range(p, l)) throw std::invalid_argument("perception joint values outside the arm range");
    }
  }
  for (const auto& [name, j] : arm_poses) {
    if (!kinematics.joints_in_range(j.pan, j.lift)) throw std::invalid_argument("arm pose " + name + " outside the arm range");
  }
  if (!arm_poses.count("observe")) throw std::invalid_argument("arm pose 'observe' is required");
}

double WorldModel::surface_height(double x, double y) const {
  if (auto tb = geometry.table_under(x, y)) return geometry.table(*tb).height;
  return 0.0;
}

bool WorldModel::object_in_view(const ObjectId& o, const Pose2D& pose, const Pose2D& robot, double pan,
                                double lift) const {
  if (!kinematics.joints_in_range(pan, lift)) return false;
  const auto camera_pose = camera_pose_from_joints(pan, lift, robot, kinematics);
  const auto vertices = bbox_vertices(pose, surface_height(pose.x(), pose.y()), geometry.object(o).bounding_box);
  return frustum_contains(camera_pose, camera, vertices);
}

}  // namespace rae::sim
