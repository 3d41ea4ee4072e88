#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rae/core/pose.hpp"

namespace rae {

using ObjectId = std::string;
using TableId = std::string;
using RobotId = std::string;

enum class ObjectClass { kTool, kBox, kTableFixture };

const char* to_string(ObjectClass c);
ObjectClass object_class_from_string(const std::string& s);

/// Full axis-aligned extents of an object, in meters.
struct BoundingBox {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  bool operator==(const BoundingBox&) const = default;
};

struct ObjectSpec {
  ObjectId id;
  ObjectClass object_class = ObjectClass::kTool;
  double reward = 0.0;
  double success_probability = 1.0;
  BoundingBox bounding_box;
  // Detection confidence the executor's detector reports for this object.
  double detection_confidence = 1.0;

  /// Throws std::invalid_argument when the spec breaks its invariants.
  void validate() const;
};

/// on(object, table) or in(object, box).
struct Fact {
  enum class Kind { kOn, kIn };
  Kind kind = Kind::kOn;
  ObjectId object;
  std::string holder;

  static Fact on(ObjectId o, TableId tb) { return {Kind::kOn, std::move(o), std::move(tb)}; }
  static Fact in(ObjectId o, ObjectId box) { return {Kind::kIn, std::move(o), std::move(box)}; }

  auto operator<=>(const Fact&) const = default;
  bool operator==(const Fact&) const = default;
};

std::string to_string(const Fact& f);

using FactSet = std::set<Fact>;

struct ArmJoints {
  double pan = 0.0;
  double lift = 0.0;

  bool operator==(const ArmJoints&) const = default;
};

/// The robot's belief about the world: poses, symbolic facts and bookkeeping
/// variables. A plain value type; copies are independent.
struct WorldState {
  RobotId robot = "r1";
  Pose2D robot_pose;
  // std::nullopt marks a pose that has not been perceived yet.
  std::map<ObjectId, std::optional<Pose2D>> object_poses;
  FactSet symbolic_facts;
  std::map<ObjectId, ObjectClass> classifications;
  std::optional<ObjectId> holding;
  std::set<TableId> not_visited;
  std::map<TableId, std::set<ObjectId>> collected;
  ArmJoints arm;
  std::int64_t time_passed = 0;

  bool operator==(const WorldState&) const = default;

  std::optional<Pose2D> pose_of(const ObjectId& o) const;
  ObjectClass class_of(const ObjectId& o) const;
  bool is_box(const ObjectId& o) const { return class_of(o) == ObjectClass::kBox; }

  /// Table holding o, if an on(o, tb) fact exists.
  std::optional<TableId> table_of(const ObjectId& o) const;
  /// Box containing o, if an in(o, b) fact exists.
  std::optional<ObjectId> box_of(const ObjectId& o) const;
  /// Objects with an on(., tb) fact, in id order.
  std::vector<ObjectId> objects_on(const TableId& tb) const;
  /// Objects with an in(., box) fact, in id order.
  std::vector<ObjectId> objects_in(const ObjectId& box) const;
};

/// Independent deep copy.
inline WorldState snapshot(const WorldState& s) { return s; }

/// Returns a description of every violated invariant; empty when consistent.
std::vector<std::string> invariant_violations(const WorldState& s);

/// Same as invariant_violations but also checks monotone time against a
/// predecessor state.
std::vector<std::string> transition_violations(const WorldState& before, const WorldState& after);

/// Stable 64-bit digest of the full state.
std::uint64_t digest(const WorldState& s);

/// Digest of the part of the state the executor reports (everything except
/// engine bookkeeping such as not_visited).
std::uint64_t reported_digest(const WorldState& s);

/// Canonical text form, also the input to digest().
std::string canonical_string(const WorldState& s);

}  // namespace rae
