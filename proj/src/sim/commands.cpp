#include "rae/sim/commands.hpp"

#include <cmath>
#include <stdexcept>

namespace rae::sim {

namespace {

const std::string& str(const std::map<std::string, Value>& args, const char* name) {
  return as_string(args.at(name));
}

double num(const std::map<std::string, Value>& args, const char* name) { return as_double(args.at(name)); }

bool docked(const WorldModel& m, const WorldState& s, const TableId& tb) {
  return m.geometry.docked_at(s.robot_pose) == tb;
}

double radius(const BoundingBox& b) { return 0.5 * std::hypot(b.dx, b.dy); }

}  // namespace

std::optional<Pose2D> placement_pose(const WorldModel& model, const WorldState& s, const ObjectId& o,
                                     const TableId& tb) {
  const TableSpec& table = model.geometry.table(tb);
  const double r_o = radius(model.geometry.object(o).bounding_box);
  constexpr double kSpacing = 0.1;
  const double x0 = table.center.x() - 0.5 * table.width;
  const double y0 = table.center.y() - 0.5 * table.depth;
  const int nx = static_cast<int>(std::floor(table.width / kSpacing));
  const int ny = static_cast<int>(std::floor(table.depth / kSpacing));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double x = x0 + (i + 0.5) * kSpacing;
      const double y = y0 + (j + 0.5) * kSpacing;
      if (x - r_o < x0 || x + r_o > x0 + table.width || y - r_o < y0 || y + r_o > y0 + table.depth) continue;
      bool free = true;
      for (const auto& [p, pose] : s.object_poses) {
        if (p == o || !pose || (s.holding && *s.holding == p)) continue;
        // Contents of the object being placed travel with it.
        if (s.box_of(p) == o) continue;
        const double r_p = radius(model.geometry.object(p).bounding_box);
        if (std::hypot(pose->x() - x, pose->y() - y) <= r_o + r_p + 0.02) {
          free = false;
          break;
        }
      }
      if (free) return Pose2D(x, y, 0.0);
    }
  }
  return std::nullopt;
}

std::optional<std::string> precondition_failure(const WorldModel& m, const CommandCall& call, const WorldState& s) {
  const auto args = m.commands.named_args(call);
  const auto& g = m.geometry;
  const std::string& name = call.name;
  if (name == "move") {
    if (!g.find_table(str(args, "l2"))) return "unknown destination " + str(args, "l2");
    return std::nullopt;
  }
  if (name == "set_arm_joints") {
    if (!m.kinematics.joints_in_range(num(args, "pan"), num(args, "lift"))) return "joints out of range";
    return std::nullopt;
  }
  if (name == "move_arm_to_pose") {
    if (!m.arm_poses.count(str(args, "arm_pose"))) return "unknown arm pose " + str(args, "arm_pose");
    return std::nullopt;
  }
  if (name == "perceive_table") {
    const auto& tb = str(args, "tb");
    if (!g.find_table(tb)) return "unknown table " + tb;
    if (!docked(m, s, tb)) return "robot is not at base(" + tb + ")";
    if (!m.kinematics.joints_in_range(num(args, "pan"), num(args, "lift"))) return "joints out of range";
    return std::nullopt;
  }
  if (name == "read_current_pose") {
    const auto& o = str(args, "o");
    if (!g.objects.count(o)) return "unknown object " + o;
    if (s.holding == o) return o + " is held";
    if (!s.pose_of(o)) return "no approximate pose for " + o;
    if (!m.kinematics.joints_in_range(num(args, "pan"), num(args, "lift"))) return "joints out of range";
    return std::nullopt;
  }
  if (name == "grasp") {
    const auto& o = str(args, "o");
    const auto& from = str(args, "from_what");
    if (!g.objects.count(o)) return "unknown object " + o;
    if (s.holding) return "already holding " + *s.holding;
    const auto pose = s.pose_of(o);
    if (!pose) return "pose of " + o + " unknown";
    if (s.table_of(o) != from) return o + " is not on " + from;
    if (!docked(m, s, from)) return "robot is not at base(" + from + ")";
    if (distance(s.robot_pose, *pose) > m.reach_radius) return o + " is out of reach";
    return std::nullopt;
  }
  if (name == "store_object") {
    const auto& tb = str(args, "tb");
    const auto& o = str(args, "o");
    const auto& box = str(args, "box");
    if (s.holding != o) return "not holding " + o;
    if (!g.objects.count(box) || !s.is_box(box) || o == box) return box + " is not a box";
    if (s.table_of(box) != tb) return box + " is not on " + tb;
    if (!docked(m, s, tb)) return "robot is not at base(" + tb + ")";
    return std::nullopt;
  }
  if (name == "place") {
    const auto& o = str(args, "o");
    const auto& tb = str(args, "on_what");
    if (s.holding != o) return "not holding " + o;
    if (!g.find_table(tb)) return "unknown table " + tb;
    if (!docked(m, s, tb)) return "robot is not at base(" + tb + ")";
    if (!placement_pose(m, s, o, tb)) return "no free spot on " + tb;
    return std::nullopt;
  }
  throw std::out_of_range("unknown command '" + name + "'");
}

std::vector<ObjectId> apply_success(const WorldModel& m, const CommandCall& call, WorldState& s) {
  const auto args = m.commands.named_args(call);
  const auto& g = m.geometry;
  const std::string& name = call.name;
  std::vector<ObjectId> collected;
  if (name == "move") {
    s.robot_pose = g.table(str(args, "l2")).base_pose;
  } else if (name == "set_arm_joints" || name == "perceive_table") {
    s.arm = {num(args, "pan"), num(args, "lift")};
  } else if (name == "move_arm_to_pose") {
    s.arm = m.arm_poses.at(str(args, "arm_pose"));
  } else if (name == "read_current_pose") {
    // Pose refinement itself is owned by the caller.
  } else if (name == "grasp") {
    s.holding = str(args, "o");
    refresh_facts(s, g);
  } else if (name == "store_object") {
    const auto& o = str(args, "o");
    s.object_poses[o] = *s.pose_of(str(args, "box"));
    s.holding.reset();
    refresh_facts(s, g);
  } else if (name == "place") {
    const auto& o = str(args, "o");
    const auto& tb = str(args, "on_what");
    const Pose2D spot = *placement_pose(m, s, o, tb);
    const std::vector<ObjectId> contents = s.objects_in(o);
    s.object_poses[o] = spot;
    for (const auto& c : contents) s.object_poses[c] = spot;
    s.holding.reset();
    refresh_facts(s, g);
    if (tb == g.target_table) {
      auto& done = s.collected[tb];
      if (done.insert(o).second) collected.push_back(o);
      for (const auto& c : contents) {
        if (done.insert(c).second) collected.push_back(c);
      }
    }
  } else {
    throw std::out_of_range("unknown command '" + name + "'");
  }
  return collected;
}

upom::SimulatedResult simulate_command(const WorldModel& m, const CommandCall& call, const WorldState& state,
                                       Rng& rng) {
  const CommandSpec& spec = m.commands.get(call.name);
  upom::SimulatedResult r;
  r.cost = spec.cost;
  r.next = state;
  r.next.time_passed = state.time_passed + spec.cost;
  if (precondition_failure(m, call, state)) return r;

  const auto args = m.commands.named_args(call);
  double p = spec.success_probability;
  if (call.name == "grasp") p = m.geometry.object(str(args, "o")).success_probability;
  if (call.name == "read_current_pose") {
    const auto& o = str(args, "o");
    if (!m.object_in_view(o, *state.pose_of(o), state.robot_pose, num(args, "pan"), num(args, "lift"))) return r;
  }
  r.success = bernoulli(rng, p);
  if (r.success) r.collected = apply_success(m, call, r.next);
  return r;
}

}  // namespace rae::sim
