#include "rae/sim/executor.hpp"

#include "rae/sim/commands.hpp"

namespace rae::sim {

Executor::Executor(const WorldModel& model, WorldState initial, const std::map<ObjectId, Pose2D>& true_poses,
                   FaultScript faults, std::uint64_t seed)
    : model_(model), reported_(std::move(initial)), faults_(std::move(faults)), rng_(seed) {
  truth_ = reported_;
  for (const auto& [o, pose] : true_poses) truth_.object_poses[o] = pose;
  refresh_facts(truth_, model_.geometry);
}

bool Executor::detectable(const ObjectId& o, const FaultVerdict& verdict, double pan, double lift) const {
  if (verdict.suppressed.count(o)) return false;
  const ObjectSpec& spec = model_.geometry.object(o);
  if (spec.detection_confidence < model_.perception.detection_confidence_threshold) return false;
  const auto pose = truth_.pose_of(o);
  if (!pose || truth_.holding == o) return false;
  return model_.object_in_view(o, *pose, truth_.robot_pose, pan, lift);
}

Pose2D Executor::perceived(const Pose2D& truth) {
  const double sigma = model_.perception.noise_sigma;
  if (sigma <= 0.0) return truth;
  const double dx = gaussian(rng_, sigma);
  const double dy = gaussian(rng_, sigma);
  return {truth.x() + dx, truth.y() + dy, truth.theta()};
}

acting::StatusMessage Executor::execute(const acting::CommandMessage& msg) {
  const CommandCall& call = msg.call;
  const CommandSpec& spec = model_.commands.get(call.name);
  ++executed_;

  acting::StatusMessage status;
  status.id = msg.id;
  status.cost = spec.cost;
  status.status = acting::CommandStatus::kFailure;

  const FaultVerdict verdict = faults_.on_dispatch(call, model_.commands);
  if (auto why = precondition_failure(model_, call, reported_)) {
    status.reason = *why;
  } else if (verdict.fail) {
    status.reason = verdict.reason;
  } else {
    const auto args = model_.commands.named_args(call);
    if (call.name == "perceive_table") {
      const auto& tb = as_string(args.at("tb"));
      const double pan = as_double(args.at("pan"));
      const double lift = as_double(args.at("lift"));
      apply_success(model_, call, reported_);
      apply_success(model_, call, truth_);
      for (const auto& [o, pose] : truth_.object_poses) {
        if (!pose || model_.geometry.table_under(pose->x(), pose->y()) != tb) continue;
        if (detectable(o, verdict, pan, lift)) reported_.object_poses[o] = perceived(*pose);
      }
      refresh_facts(reported_, model_.geometry);
      status.status = acting::CommandStatus::kSuccess;
    } else if (call.name == "read_current_pose") {
      const auto& o = as_string(args.at("o"));
      if (detectable(o, verdict, as_double(args.at("pan")), as_double(args.at("lift")))) {
        reported_.object_poses[o] = perceived(*truth_.pose_of(o));
        refresh_facts(reported_, model_.geometry);
        status.status = acting::CommandStatus::kSuccess;
      } else {
        status.reason = o + " not detected";
      }
    } else if (call.name == "place") {
      const auto& o = as_string(args.at("o"));
      const std::vector<ObjectId> contents = reported_.objects_in(o);
      status.collected = apply_success(model_, call, reported_);
      // The spot is chosen from what the robot knows; the truth follows it.
      truth_.object_poses[o] = reported_.object_poses[o];
      for (const auto& c : contents) truth_.object_poses[c] = reported_.object_poses[o];
      truth_.holding.reset();
      truth_.collected = reported_.collected;
      refresh_facts(truth_, model_.geometry);
      status.status = acting::CommandStatus::kSuccess;
    } else {
      status.collected = apply_success(model_, call, reported_);
      apply_success(model_, call, truth_);
      status.status = acting::CommandStatus::kSuccess;
    }
  }
  reported_.time_passed += spec.cost;
  truth_.time_passed += spec.cost;
  status.state = reported_;
  return status;
}

void Executor::serve(acting::Channel<acting::CommandMessage>& commands,
                     acting::Channel<acting::StatusMessage>& statuses) {
  while (auto msg = commands.pop()) {
    acting::StatusMessage running;
    running.id = msg->id;
    running.status = acting::CommandStatus::kRunning;
    statuses.push(std::move(running));
    statuses.push(execute(*msg));
  }
}

}  // namespace rae::sim
