#include "rae/core/world_state.hpp"

#include <charconv>
#include <stdexcept>

namespace rae {

const char* to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::kTool:
      return "tool";
    case ObjectClass::kBox:
      return "box";
    case ObjectClass::kTableFixture:
      return "table-fixture";
  }
  return "?";
}

ObjectClass object_class_from_string(const std::string& s) {
  if (s == "tool") return ObjectClass::kTool;
  if (s == "box") return ObjectClass::kBox;
  if (s == "table-fixture") return ObjectClass::kTableFixture;
  throw std::invalid_argument("unknown object class '" + s + "'");
}

void ObjectSpec::validate() const {
  if (id.empty()) throw std::invalid_argument("object id must not be empty");
  if (!(reward >= 0.0)) throw std::invalid_argument("object " + id + ": reward must be >= 0");
  if (object_class == ObjectClass::kBox && reward != 0.0) {
    throw std::invalid_argument("object " + id + ": a box carries no reward");
  }
  if (!(success_probability >= 0.0 && success_probability <= 1.0)) {
    throw std::invalid_argument("object " + id + ": success_probability outside [0, 1]");
  }
  if (!(bounding_box.dx > 0.0 && bounding_box.dy > 0.0 && bounding_box.dz > 0.0)) {
    throw std::invalid_argument("object " + id + ": bounding box extents must be positive");
  }
  if (!(detection_confidence >= 0.0 && detection_confidence <= 1.0)) {
    throw std::invalid_argument("object " + id + ": detection_confidence outside [0, 1]");
  }
}

std::string to_string(const Fact& f) {
  return (f.kind == Fact::Kind::kOn ? "on(" : "in(") + f.object + "," + f.holder + ")";
}

std::optional<Pose2D> WorldState::pose_of(const ObjectId& o) const {
  auto it = object_poses.find(o);
  if (it == object_poses.end()) return std::nullopt;
  return it->second;
}

ObjectClass WorldState::class_of(const ObjectId& o) const {
  auto it = classifications.find(o);
  return it == classifications.end() ? ObjectClass::kTool : it->second;
}

std::optional<TableId> WorldState::table_of(const ObjectId& o) const {
  for (const auto& f : symbolic_facts) {
    if (f.kind == Fact::Kind::kOn && f.object == o) return f.holder;
  }
  return std::nullopt;
}

std::optional<ObjectId> WorldState::box_of(const ObjectId& o) const {
  for (const auto& f : symbolic_facts) {
    if (f.kind == Fact::Kind::kIn && f.object == o) return f.holder;
  }
  return std::nullopt;
}

std::vector<ObjectId> WorldState::objects_on(const TableId& tb) const {
  std::vector<ObjectId> out;
  for (const auto& f : symbolic_facts) {
    if (f.kind == Fact::Kind::kOn && f.holder == tb) out.push_back(f.object);
  }
  return out;
}

std::vector<ObjectId> WorldState::objects_in(const ObjectId& box) const {
  std::vector<ObjectId> out;
  for (const auto& f : symbolic_facts) {
    if (f.kind == Fact::Kind::kIn && f.holder == box) out.push_back(f.object);
  }
  return out;
}

std::vector<std::string> invariant_violations(const WorldState& s) {
  std::vector<std::string> out;
  std::map<ObjectId, int> on_count;
  std::map<ObjectId, int> in_count;
  for (const auto& f : s.symbolic_facts) {
    if (s.holding && f.object == *s.holding) {
      out.push_back("held object " + f.object + " has fact " + to_string(f));
    }
    if (f.kind == Fact::Kind::kOn) {
      ++on_count[f.object];
    } else {
      ++in_count[f.object];
      if (s.class_of(f.holder) != ObjectClass::kBox) {
        out.push_back(to_string(f) + " but " + f.holder + " is not a box");
      }
      if (f.object == f.holder) out.push_back(to_string(f) + " is reflexive");
    }
  }
  for (const auto& [o, n] : on_count) {
    if (n > 1) out.push_back(o + " has " + std::to_string(n) + " on facts");
    if (in_count.count(o)) out.push_back(o + " has both on and in facts");
  }
  for (const auto& [o, n] : in_count) {
    if (n > 1) out.push_back(o + " has " + std::to_string(n) + " in facts");
  }
  if (s.time_passed < 0) out.push_back("negative time_passed");
  return out;
}

std::vector<std::string> transition_violations(const WorldState& before, const WorldState& after) {
  auto out = invariant_violations(after);
  if (after.time_passed < before.time_passed) {
    out.push_back("time_passed decreased from " + std::to_string(before.time_passed) + " to " +
                  std::to_string(after.time_passed));
  }
  return out;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

void append_pose(std::string& out, const Pose2D& p) {
  out += '(';
  append_double(out, p.x());
  out += ',';
  append_double(out, p.y());
  out += ',';
  append_double(out, p.theta());
  out += ')';
}

std::string canonical(const WorldState& s, bool include_bookkeeping) {
  std::string out;
  out.reserve(512);
  out += "robot=" + s.robot + ";pose=";
  append_pose(out, s.robot_pose);
  out += ";objects=";
  for (const auto& [o, p] : s.object_poses) {
    out += o + ':';
    if (p) {
      append_pose(out, *p);
    } else {
      out += '?';
    }
    out += ',';
  }
  out += ";facts=";
  for (const auto& f : s.symbolic_facts) out += to_string(f) + ',';
  out += ";classes=";
  for (const auto& [o, c] : s.classifications) out += o + ':' + to_string(c) + ',';
  out += ";holding=" + s.holding.value_or("-");
  if (include_bookkeeping) {
    out += ";not_visited=";
    for (const auto& tb : s.not_visited) out += tb + ',';
  }
  out += ";collected=";
  for (const auto& [tb, objs] : s.collected) {
    out += tb + ":{";
    for (const auto& o : objs) out += o + ',';
    out += "},";
  }
  out += ";arm=";
  append_double(out, s.arm.pan);
  out += ',';
  append_double(out, s.arm.lift);
  out += ";time=" + std::to_string(s.time_passed);
  return out;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string canonical_string(const WorldState& s) { return canonical(s, true); }

std::uint64_t digest(const WorldState& s) { return fnv1a64(canonical(s, true)); }

std::uint64_t reported_digest(const WorldState& s) { return fnv1a64(canonical(s, false)); }

}  // namespace rae
