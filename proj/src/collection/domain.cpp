#include "rae/collection/domain.hpp"

#include <algorithm>
#include <functional>

namespace rae::collection {

namespace {

using Model = std::shared_ptr<const sim::WorldModel>;

bool docked(const Model& m, const WorldState& s, const TableId& tb) { return m->geometry.docked_at(s.robot_pose) == tb; }

std::vector<ObjectId> loose_objects(const WorldState& s, const TableId& tb) {
  std::vector<ObjectId> out;
  for (const auto& o : s.objects_on(tb)) {
    if (!s.is_box(o)) out.push_back(o);
  }
  return out;
}

std::vector<ObjectId> boxes_on(const WorldState& s, const TableId& tb) {
  std::vector<ObjectId> out;
  for (const auto& o : s.objects_on(tb)) {
    if (s.is_box(o)) out.push_back(o);
  }
  return out;
}

void mark_visited(const TableId& tb, WorldState& s) { s.not_visited.erase(tb); }

bool has_unvisited(const Model& m, const WorldState& s) {
  for (const auto& t : s.not_visited) {
    if (t != m->geometry.target_table) return true;
  }
  return false;
}

ParamDomain as_domain(const std::vector<std::string>& ids) { return ParamDomain(ids.begin(), ids.end()); }

// Bodies. Bindings are the task arguments followed by the method parameters.

Program collect_all_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  co_await subtask("explore", r);
  while (h.state().time_passed <= m->geometry.time_limit && has_unvisited(m, h.state())) {
    co_await subtask("collect_objs_from_table", r);
  }
}

Program explore_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const ArmJoints observe = m->arm_poses.at("observe");
  std::vector<TableId> seen;
  while (true) {
    std::optional<TableId> next;
    double best = 0.0;
    for (const auto& tb : tables_by_distance(*m, h.state().robot_pose)) {
      if (std::find(seen.begin(), seen.end(), tb) != seen.end()) continue;
      const double d = distance(h.state().robot_pose, m->geometry.table(tb).base_pose);
      if (!next || d < best) {
        next = tb;
        best = d;
      }
    }
    if (!next) break;
    seen.push_back(*next);
    co_await subtask("drive", r, *next);
    co_await command("move_arm_to_pose", r, std::string("observe"));
    co_await command("perceive_table", r, *next, observe.pan, observe.lift);
  }
}

Program collect_from_table_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const TableId tb = as_string(b[1]);
  if (!docked(m, h.state(), tb)) co_await subtask("drive", r, tb);
  h.assign(std::bind_front(mark_visited, tb));
  while (h.state().time_passed <= m->geometry.time_limit) {
    if (loose_objects(h.state(), tb).empty()) break;
    co_await subtask("collect_obj", r, tb);
    co_await subtask("drive", r, tb);
  }
  if (auto box = box_available(h.state(), tb)) {
    co_await subtask("move_object", r, *box, tb, m->geometry.target_table);
  }
}

Program collect_direct_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const TableId tb = as_string(b[1]);
  const Value o = b[2];
  co_await subtask("get_object", r, o, tb);
  co_await subtask("put_object", r, o, m->geometry.target_table);
  (void)h;
}

Program collect_via_box_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const TableId tb = as_string(b[1]);
  const Value box = b[2];
  for (const auto& o : loose_objects(h.state(), tb)) {
    co_await subtask("insert_object", r, tb, o, box);
  }
  co_await subtask("move_object", r, box, tb, m->geometry.target_table);
}

Program perceive_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const ObjectId o = as_string(b[1]);
  const double pan = as_double(b[2]);
  const double lift = as_double(b[3]);
  co_await command("set_arm_joints", r, pan, lift);
  const auto pose = h.state().pose_of(o);
  if (pose && distance(h.state().robot_pose, *pose) <= m->perception.d_max) {
    co_await command("read_current_pose", r, o, pan, lift);
  }
}

Program drive_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const TableId l = as_string(b[1]);
  if (!docked(m, h.state(), l)) {
    co_await command("move", r, location_of(h.state(), m->geometry), l);
  }
}

Program get_object_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const Value o = b[1];
  const TableId tb = as_string(b[2]);
  if (!docked(m, h.state(), tb)) co_await subtask("drive", r, tb);
  co_await subtask("perceive", r, o);
  co_await command("grasp", r, o, tb);
}

Program put_object_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const Value o = b[1];
  const TableId tb = as_string(b[2]);
  if (!docked(m, h.state(), tb)) co_await subtask("drive", r, tb);
  co_await command("place", r, o, tb);
}

Program move_object_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const Value o = b[1];
  const Value from = b[2];
  const TableId to = as_string(b[3]);
  co_await subtask("get_object", r, o, from);
  if (!docked(m, h.state(), to)) co_await subtask("drive", r, to);
  co_await subtask("put_object", r, o, to);
}

Program insert_object_body(EngineHandle& h, Model m, Args b) {
  const Value r = b[0];
  const Value tb = b[1];
  const Value o = b[2];
  const Value box = b[3];
  co_await subtask("get_object", r, o, tb);
  co_await command("store_object", r, tb, o, box);
  (void)h;
  (void)m;
}

using BodyFn = Program (*)(EngineHandle&, Model, Args);

std::function<Program(EngineHandle&, Args)> bind_body(BodyFn fn, const Model& m) {
  return [fn, m](EngineHandle& h, Args b) { return fn(h, m, std::move(b)); };
}

bool always(const WorldState&, const Args&) { return true; }

}  // namespace

std::optional<ObjectId> box_available(const WorldState& s, const TableId& tb) {
  for (const auto& box : boxes_on(s, tb)) {
    if (!s.objects_in(box).empty()) return box;
  }
  return std::nullopt;
}

std::vector<TableId> tables_by_distance(const sim::WorldModel& model, const Pose2D& from) {
  std::vector<std::pair<double, TableId>> order;
  for (const auto& t : model.geometry.tables) {
    if (t.id == model.geometry.target_table) continue;
    order.emplace_back(distance(from, t.base_pose), t.id);
  }
  std::sort(order.begin(), order.end());
  std::vector<TableId> out;
  for (auto& [d, id] : order) out.push_back(std::move(id));
  return out;
}

WorldState initial_belief(const sim::WorldModel& model, const Pose2D& start, const RobotId& robot) {
  WorldState s;
  s.robot = robot;
  s.robot_pose = start;
  for (const auto& [id, spec] : model.geometry.objects) {
    s.object_poses[id] = std::nullopt;
    s.classifications[id] = spec.object_class;
  }
  for (const auto& t : model.geometry.tables) {
    if (t.id != model.geometry.target_table) s.not_visited.insert(t.id);
  }
  s.arm = model.arm_poses.at("carry");
  return s;
}

CollectionDomain build_collection_domain(std::shared_ptr<const sim::WorldModel> model, int drive_retries) {
  CollectionDomain d;
  d.model = model;
  d.commands = model->commands.names();
  auto& reg = d.methods;
  const Model m = model;

  reg.declare_task("collect_all_objs", 1);
  reg.declare_task("explore", 1);
  reg.declare_task("collect_objs_from_table", 1);
  reg.declare_task("collect_obj", 2);
  reg.declare_task("perceive", 2);
  reg.declare_task("drive", 2);
  reg.declare_task("get_object", 3);
  reg.declare_task("put_object", 3);
  reg.declare_task("move_object", 4);
  reg.declare_task("insert_object", 4);

  reg.add({.name = "collect_all_method",
           .task = "collect_all_objs",
           .precondition = always,
           .body = bind_body(collect_all_body, m)});

  reg.add({.name = "explore_method", .task = "explore", .precondition = always, .body = bind_body(explore_body, m)});

  reg.add({.name = "collect_objs_from_table",
           .task = "collect_objs_from_table",
           .param_names = {"tb"},
           .params =
               [m](const WorldState& s, const Args&) {
                 std::vector<std::string> tbs;
                 for (const auto& tb : s.not_visited) {
                   if (tb != m->geometry.target_table) tbs.push_back(tb);
                 }
                 return std::vector<ParamDomain>{as_domain(tbs)};
               },
           .precondition = always,
           .body = bind_body(collect_from_table_body, m)});

  // Via-box first: when both apply, the planner still decides.
  reg.add({.name = "collect_obj_via_box",
           .task = "collect_obj",
           .param_names = {"box"},
           .params =
               [](const WorldState& s, const Args& a) {
                 return std::vector<ParamDomain>{as_domain(boxes_on(s, as_string(a[1])))};
               },
           .precondition =
               [](const WorldState& s, const Args& b) {
                 return !s.holding && !loose_objects(s, as_string(b[1])).empty();
               },
           .body = bind_body(collect_via_box_body, m)});

  reg.add({.name = "collect_obj_direct",
           .task = "collect_obj",
           .param_names = {"o"},
           .params =
               [](const WorldState& s, const Args& a) {
                 return std::vector<ParamDomain>{as_domain(loose_objects(s, as_string(a[1])))};
               },
           .precondition = [](const WorldState& s, const Args&) { return !s.holding.has_value(); },
           .body = bind_body(collect_direct_body, m)});

  reg.add({.name = "perceive_method",
           .task = "perceive",
           .param_names = {"pan", "lift"},
           .params =
               [m](const WorldState&, const Args&) {
                 const auto& p = m->perception;
                 return std::vector<ParamDomain>{ParamDomain(p.pan_values.begin(), p.pan_values.end()),
                                                 ParamDomain(p.lift_values.begin(), p.lift_values.end())};
               },
           .precondition = [](const WorldState& s, const Args& b) { return s.pose_of(as_string(b[1])).has_value(); },
           .body = bind_body(perceive_body, m)});

  reg.add({.name = "drive_method",
           .task = "drive",
           .precondition = [m](const WorldState&, const Args& b) {
             return m->geometry.find_table(as_string(b[1])) != nullptr;
           },
           .body = bind_body(drive_body, m),
           .retry_count = drive_retries});

  reg.add({.name = "get_object_method",
           .task = "get_object",
           .precondition = [](const WorldState& s, const Args& b) {
             return !s.holding && s.table_of(as_string(b[1])) == as_string(b[2]);
           },
           .body = bind_body(get_object_body, m)});

  reg.add({.name = "put_object_method",
           .task = "put_object",
           .precondition = [](const WorldState& s, const Args& b) { return s.holding == as_string(b[1]); },
           .body = bind_body(put_object_body, m)});

  reg.add({.name = "move_object_method",
           .task = "move_object",
           .precondition = [](const WorldState& s, const Args& b) {
             return !s.holding && s.table_of(as_string(b[1])) == as_string(b[2]);
           },
           .body = bind_body(move_object_body, m)});

  reg.add({.name = "insert_object_method",
           .task = "insert_object",
           .precondition = [](const WorldState& s, const Args& b) {
             return !s.holding && s.table_of(as_string(b[2])) == as_string(b[1]) &&
                    s.table_of(as_string(b[3])) == as_string(b[1]);
           },
           .body = bind_body(insert_object_body, m)});

  return d;
}

}  // namespace rae::collection
