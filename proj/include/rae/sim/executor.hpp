#pragma once

#include <cstdint>
#include <map>

#include "rae/acting/queues.hpp"
#include "rae/core/random.hpp"
#include "rae/sim/faults.hpp"
#include "rae/sim/world_model.hpp"

namespace rae::sim {

/// The executable side of every command. Owns the ground truth (true object
/// poses, including objects the robot has not perceived) and the state it
/// reports back to the engine.
class Executor {
 public:
  Executor(const WorldModel& model, WorldState initial, const std::map<ObjectId, Pose2D>& true_poses,
           FaultScript faults, std::uint64_t seed);

  /// Runs one command to its terminal status.
  acting::StatusMessage execute(const acting::CommandMessage& msg);

  /// Consumes the command queue until it is closed, emitting a running status
  /// followed by the terminal status for every command.
  void serve(acting::Channel<acting::CommandMessage>& commands, acting::Channel<acting::StatusMessage>& statuses);

  const WorldState& reported() const { return reported_; }
  const WorldState& truth() const { return truth_; }
  std::uint64_t executed() const { return executed_; }

 private:
  bool detectable(const ObjectId& o, const FaultVerdict& verdict, double pan, double lift) const;
  Pose2D perceived(const Pose2D& truth);

  const WorldModel& model_;
  WorldState reported_;
  WorldState truth_;
  FaultScript faults_;
  Rng rng_;
  std::uint64_t executed_ = 0;
};

}  // namespace rae::sim
