#include "rae/trial/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rae::trial {

using nlohmann::json;

namespace {

// Strict view of one JSON object: every key must be consumed.
class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(where_ + ": " + what); }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    if (!j_.contains(key)) fail("missing field '" + key + "'");
    seen_.insert(key);
    return j_.at(key);
  }

  template <class T>
  T get(const std::string& key) {
    const json& v = raw(key);
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    return has(key) ? get<T>(key) : fallback;
  }

  Fields sub(const std::string& key) { return Fields(raw(key), where_ + "." + key); }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  void done() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) fail("unknown field '" + k + "'");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

Pose2D pose_from(const json& v, const std::string& where, bool needs_theta) {
  if (!v.is_array() || v.size() < 2 || v.size() > 3 || (needs_theta && v.size() != 3)) {
    throw ConfigError(where + ": expected [x, y" + std::string(needs_theta ? ", theta]" : "(, theta)]"));
  }
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(where + ": non-numeric coordinate");
  }
  return Pose2D(v[0].get<double>(), v[1].get<double>(), v.size() == 3 ? v[2].get<double>() : 0.0);
}

sim::FaultEntry parse_fault(const json& j, const std::string& where) {
  Fields f(j, where);
  sim::FaultEntry e;
  const auto effect = f.get<std::string>("effect");
  if (effect == "fail") e.effect = sim::FaultEntry::Effect::kFail;
  else if (effect == "fail_until_attempt") e.effect = sim::FaultEntry::Effect::kFailUntilAttempt;
  else if (effect == "suppress_detection") e.effect = sim::FaultEntry::Effect::kSuppressDetection;
  else f.fail("unknown effect '" + effect + "'");
  e.command = f.get<std::string>("command", "");
  e.args = f.get<std::map<std::string, std::string>>("args", {});
  e.from = f.get<int>("from", 1);
  if (f.has("to")) e.to = f.get<int>("to");
  e.attempt = f.get<int>("attempt", 1);
  e.object = f.get<std::string>("object", "");
  f.done();
  if (e.from < 1) throw ConfigError(where + ".from: must be >= 1");
  if (e.to && *e.to < e.from) throw ConfigError(where + ".to: must be >= from");
  if (e.effect == sim::FaultEntry::Effect::kFailUntilAttempt && e.attempt < 1) {
    throw ConfigError(where + ".attempt: must be >= 1");
  }
  if (e.effect == sim::FaultEntry::Effect::kSuppressDetection && e.object.empty()) {
    throw ConfigError(where + ".object: required for suppress_detection");
  }
  if (e.effect != sim::FaultEntry::Effect::kSuppressDetection && e.command.empty()) {
    throw ConfigError(where + ".command: required for " + effect);
  }
  return e;
}

std::vector<sim::FaultEntry> parse_faults(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<sim::FaultEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_fault(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  const json doc = parse_json(text);
  Fields root(doc, "scenario");
  Scenario sc;
  auto model = std::make_shared<sim::WorldModel>();

  sc.name = root.get<std::string>("name");
  sc.description = root.get<std::string>("description", "");

  {
    Fields robot = root.sub("robot");
    sc.robot = robot.get<std::string>("id", "r1");
    sc.start = pose_from(robot.raw("start"), robot.path("start"), true);
    robot.done();
  }

  model->geometry.time_limit = root.get<std::int64_t>("time_limit");
  model->geometry.target_table = root.get<std::string>("target_table");

  const json& tables = root.raw("tables");
  if (!tables.is_array()) root.fail("tables: expected an array");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    Fields t(tables[i], "scenario.tables[" + std::to_string(i) + "]");
    TableSpec spec;
    spec.id = t.get<std::string>("id");
    spec.center = pose_from(t.raw("center"), t.path("center"), false);
    spec.width = t.get<double>("width");
    spec.depth = t.get<double>("depth");
    spec.height = t.get<double>("height", spec.height);
    spec.base_pose = pose_from(t.raw("base_pose"), t.path("base_pose"), true);
    t.done();
    model->geometry.tables.push_back(spec);
  }

  const json& objects = root.raw("objects");
  if (!objects.is_array()) root.fail("objects: expected an array");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    Fields o(objects[i], "scenario.objects[" + std::to_string(i) + "]");
    ObjectSpec spec;
    spec.id = o.get<std::string>("id");
    const auto cls = o.get<std::string>("class");
    try {
      spec.object_class = object_class_from_string(cls);
    } catch (const std::invalid_argument&) {
      o.fail("unknown class '" + cls + "'");
    }
    spec.reward = o.get<double>("reward");
    spec.success_probability = o.get<double>("success_probability", 1.0);
    const auto bb = o.get<std::vector<double>>("bounding_box");
    if (bb.size() != 3) o.fail("bounding_box: expected [dx, dy, dz]");
    spec.bounding_box = {bb[0], bb[1], bb[2]};
    spec.detection_confidence = o.get<double>("detection_confidence", 1.0);
    const Pose2D pose = pose_from(o.raw("pose"), o.path("pose"), false);
    o.done();
    if (model->geometry.objects.count(spec.id)) o.fail("duplicate object id '" + spec.id + "'");
    sc.true_poses[spec.id] = pose;
    try {
      spec.validate();
    } catch (const std::exception& e) {
      o.fail(e.what());
    }
    model->geometry.objects[spec.id] = spec;
  }

  if (root.has("commands")) {
    Fields cmds = root.sub("commands");
    for (const auto& name : model->commands.names()) {
      if (!cmds.has(name)) continue;
      Fields c = cmds.sub(name);
      auto& spec = model->commands.mutable_get(name);
      spec.cost = c.get<std::int64_t>("cost", spec.cost);
      spec.success_probability = c.get<double>("success_probability", spec.success_probability);
      c.done();
      if (spec.cost < 1) c.fail("cost must be >= 1");
      if (spec.success_probability < 0.0 || spec.success_probability > 1.0) {
        c.fail("success_probability must lie in [0, 1]");
      }
    }
    cmds.done();
  }

  if (root.has("perception")) {
    Fields p = root.sub("perception");
    auto& cfg = model->perception;
    cfg.d_max = p.get<double>("d_max", cfg.d_max);
    cfg.pan_values = p.get<std::vector<double>>("pan_values", cfg.pan_values);
    cfg.lift_values = p.get<std::vector<double>>("lift_values", cfg.lift_values);
    cfg.detection_confidence_threshold =
        p.get<double>("detection_confidence_threshold", cfg.detection_confidence_threshold);
    cfg.noise_sigma = p.get<double>("noise_sigma", cfg.noise_sigma);
    p.done();
  }

  model->reach_radius = root.get<double>("reach_radius", model->reach_radius);
  sc.drive_retries = root.get<int>("drive_retries", sc.drive_retries);
  if (sc.drive_retries < 0) root.fail("drive_retries must be >= 0");

  if (root.has("utility")) {
    Fields u = root.sub("utility");
    sc.utility.c1 = u.get<double>("c1", sc.utility.c1);
    sc.utility.c2 = u.get<double>("c2", sc.utility.c2);
    sc.utility.k = u.get<double>("k", sc.utility.k);
    u.done();
  }

  if (root.has("planner")) {
    Fields p = root.sub("planner");
    sc.planner.budget = p.get<int>("budget", sc.planner.budget);
    sc.planner.exploration_c = p.get<double>("exploration_c", sc.planner.exploration_c);
    sc.planner.depth_limit = p.get<int>("depth_limit", sc.planner.depth_limit);
    p.done();
    if (sc.planner.budget < 1) p.fail("budget must be >= 1");
    if (sc.planner.depth_limit < 1) p.fail("depth_limit must be >= 1");
  }

  if (root.has("faults")) sc.faults = parse_faults(root.raw("faults"), "scenario.faults");
  root.done();

  sc.utility.eta = model->geometry.time_limit;
  for (const auto& [id, spec] : model->geometry.objects) sc.utility.rewards[id] = spec.reward;

  try {
    model->validate();
    sc.utility.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  for (const auto& [id, pose] : sc.true_poses) {
    if (!model->geometry.table_under(pose.x(), pose.y())) {
      throw ConfigError("scenario: object '" + id + "' does not rest on any table");
    }
  }
  for (const auto& f : sc.faults) {
    if (!f.command.empty() && !model->commands.contains(f.command)) {
      throw ConfigError("scenario: fault names unknown command '" + f.command + "'");
    }
    if (!f.object.empty() && !model->geometry.objects.count(f.object)) {
      throw ConfigError("scenario: fault names unknown object '" + f.object + "'");
    }
  }
  sc.model = std::move(model);
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(slurp(path)); }

std::vector<sim::FaultEntry> parse_fault_script(const std::string& text) {
  const json doc = parse_json(text);
  Fields root(doc, "fault_script");
  auto out = parse_faults(root.raw("faults"), "fault_script.faults");
  root.done();
  return out;
}

std::vector<sim::FaultEntry> load_fault_script(const std::filesystem::path& path) {
  return parse_fault_script(slurp(path));
}

}  // namespace rae::trial
