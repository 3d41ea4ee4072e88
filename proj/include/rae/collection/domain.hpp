#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rae/model/method.hpp"
#include "rae/sim/world_model.hpp"

namespace rae::collection {

/// The object-collection operational model: tasks, methods and the command
/// set their bodies draw from.
struct CollectionDomain {
  std::shared_ptr<const sim::WorldModel> model;
  MethodRegistry methods;
  std::vector<std::string> commands;
};

/// Registers every task of the collection domain with its methods. Navigation
/// methods get retry_count `drive_retries`.
CollectionDomain build_collection_domain(std::shared_ptr<const sim::WorldModel> model, int drive_retries = 2);

/// A box on `tb` that contains at least one stored object.
std::optional<ObjectId> box_available(const WorldState& s, const TableId& tb);

/// Belief at trial start: robot at `start`, every object pose unknown, all
/// non-target tables unvisited, arm in the carry posture.
WorldState initial_belief(const sim::WorldModel& model, const Pose2D& start, const RobotId& robot = "r1");

/// Non-target tables in order of increasing drive distance from `from`,
/// ties broken by id.
std::vector<TableId> tables_by_distance(const sim::WorldModel& model, const Pose2D& from);

}  // namespace rae::collection
