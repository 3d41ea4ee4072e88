#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rae/core/world_state.hpp"

namespace rae {

struct TableSpec {
  TableId id;
  Pose2D center;
  // Surface size along world x and world y.
  double width = 1.0;
  double depth = 1.0;
  // Height of the surface above the floor.
  double height = 0.72;
  // Docking pose in front of the table, base(tb).
  Pose2D base_pose;

  bool surface_contains(double x, double y) const;
};

struct ScenarioGeometry {
  std::vector<TableSpec> tables;
  TableId target_table;
  std::int64_t time_limit = 1;
  // Object catalog, needed for footprints and heights.
  std::map<ObjectId, ObjectSpec> objects;

  const TableSpec& table(const TableId& id) const;
  const TableSpec* find_table(const TableId& id) const;
  const ObjectSpec& object(const ObjectId& id) const;
  std::vector<TableId> table_ids() const;

  /// Table whose base pose equals p (to 1 mm / 1 mrad), if any.
  std::optional<TableId> docked_at(const Pose2D& p) const;
  /// Table whose surface contains (x, y), first in declaration order.
  std::optional<TableId> table_under(double x, double y) const;

  /// Throws std::invalid_argument when invariants are broken.
  void validate() const;
};

/// Location label of the robot: the table it is docked at, or "start".
std::string location_of(const WorldState& s, const ScenarioGeometry& g);

/// True when (x, y) lies within the axis-aligned footprint of box b at pose.
bool footprint_contains(const Pose2D& box_pose, const BoundingBox& box, double x, double y);

/// Symbolic facts implied by the poses in `s`. Held objects and objects with
/// unknown pose produce no facts; an object inside a box produces in(o, b)
/// only.
FactSet derive_symbolic_facts(const WorldState& s, const ScenarioGeometry& g);

/// Recomputes s.symbolic_facts from poses.
void refresh_facts(WorldState& s, const ScenarioGeometry& g);

}  // namespace rae
