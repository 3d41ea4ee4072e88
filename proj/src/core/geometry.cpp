#include "rae/core/geometry.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace rae {

bool TableSpec::surface_contains(double x, double y) const {
  return std::abs(x - center.x()) <= 0.5 * width && std::abs(y - center.y()) <= 0.5 * depth;
}

const TableSpec* ScenarioGeometry::find_table(const TableId& id) const {
  for (const auto& t : tables) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

const TableSpec& ScenarioGeometry::table(const TableId& id) const {
  if (const auto* t = find_table(id)) return *t;
  throw std::out_of_range("unknown table '" + id + "'");
}

const ObjectSpec& ScenarioGeometry::object(const ObjectId& id) const {
  auto it = objects.find(id);
  if (it == objects.end()) throw std::out_of_range("unknown object '" + id + "'");
  return it->second;
}

std::vector<TableId> ScenarioGeometry::table_ids() const {
  std::vector<TableId> out;
  out.reserve(tables.size());
  for (const auto& t : tables) out.push_back(t.id);
  return out;
}

std::optional<TableId> ScenarioGeometry::docked_at(const Pose2D& p) const {
  for (const auto& t : tables) {
    if (distance(p, t.base_pose) < 1e-3 && std::abs(normalize_angle(p.theta() - t.base_pose.theta())) < 1e-3) {
      return t.id;
    }
  }
  return std::nullopt;
}

std::optional<TableId> ScenarioGeometry::table_under(double x, double y) const {
  for (const auto& t : tables) {
    if (t.surface_contains(x, y)) return t.id;
  }
  return std::nullopt;
}

void ScenarioGeometry::validate() const {
  if (tables.empty()) throw std::invalid_argument("scenario has no tables");
  std::set<TableId> ids;
  for (const auto& t : tables) {
    if (t.id.empty()) throw std::invalid_argument("table id must not be empty");
    if (!ids.insert(t.id).second) throw std::invalid_argument("duplicate table id '" + t.id + "'");
    if (!(t.width > 0.0 && t.depth > 0.0)) {
      throw std::invalid_argument("table " + t.id + ": extents must be positive");
    }
  }
  if (!find_table(target_table)) {
    throw std::invalid_argument("target table '" + target_table + "' is not a declared table");
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (std::size_t j = i + 1; j < tables.size(); ++j) {
      if (distance(tables[i].base_pose, tables[j].base_pose) < 1e-3) {
        throw std::invalid_argument("tables " + tables[i].id + " and " + tables[j].id +
                                    " share a base pose");
      }
    }
  }
  if (time_limit < 1) throw std::invalid_argument("time_limit must be >= 1");
  for (const auto& [id, spec] : objects) {
    if (id != spec.id) throw std::invalid_argument("object key/id mismatch for '" + id + "'");
    if (ids.count(id)) throw std::invalid_argument("object id '" + id + "' collides with a table id");
    spec.validate();
  }
}

std::string location_of(const WorldState& s, const ScenarioGeometry& g) {
  return g.docked_at(s.robot_pose).value_or("start");
}

bool footprint_contains(const Pose2D& box_pose, const BoundingBox& box, double x, double y) {
  return std::abs(x - box_pose.x()) <= 0.5 * box.dx && std::abs(y - box_pose.y()) <= 0.5 * box.dy;
}

FactSet derive_symbolic_facts(const WorldState& s, const ScenarioGeometry& g) {
  FactSet facts;
  for (const auto& [o, pose] : s.object_poses) {
    if (!pose) continue;
    if (s.holding && *s.holding == o) continue;
    std::optional<ObjectId> container;
    if (!s.is_box(o)) {
      for (const auto& [b, bpose] : s.object_poses) {
        if (b == o || !bpose || !s.is_box(b)) continue;
        auto spec = g.objects.find(b);
        if (spec == g.objects.end()) continue;
        if (footprint_contains(*bpose, spec->second.bounding_box, pose->x(), pose->y())) {
          container = b;
          break;
        }
      }
    }
    if (container) {
      facts.insert(Fact::in(o, *container));
    } else if (auto tb = g.table_under(pose->x(), pose->y())) {
      facts.insert(Fact::on(o, *tb));
    }
  }
  return facts;
}

void refresh_facts(WorldState& s, const ScenarioGeometry& g) {
  s.symbolic_facts = derive_symbolic_facts(s, g);
}

}  // namespace rae
