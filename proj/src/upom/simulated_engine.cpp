#include "rae/upom/simulated_engine.hpp"

namespace rae::upom {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kCompletion:
      return "completion";
    case Termination::kCommandFailure:
      return "command-failure";
    case Termination::kTimeLimit:
      return "time-limit";
    case Termination::kDepthLimit:
      return "depth-limit";
  }
  return "?";
}

SimulatedEngine::SimulatedEngine(const MethodRegistry& methods, WorldState start, OutcomeFn outcome,
                                 ChooseFn choose, Limits limits)
    : methods_(methods),
      state_(std::move(start)),
      outcome_(std::move(outcome)),
      choose_(std::move(choose)),
      limits_(limits),
      root_(std::make_unique<RefinementNode>()) {
  trace_.start_cost = state_.time_passed;
  root_->label = "rollout";
  cursor_ = root_.get();
}

void SimulatedEngine::stop(Termination t) {
  if (!stopped_) {
    stopped_ = true;
    termination_ = t;
  }
}

bool SimulatedEngine::run(const TaskSignature& task, const std::vector<MethodInstance>* root_candidates) {
  const bool ok = refine(task, root_candidates);
  if (ok) stop(Termination::kCompletion);
  return ok;
}

bool SimulatedEngine::do_command(const CommandCall& call) {
  if (stopped_) return false;
  SimulatedResult r = outcome_(call, state_);
  if (state_.time_passed + r.cost > limits_.eta) {
    stop(Termination::kTimeLimit);
    return false;
  }
  auto* node = cursor_->add(RefinementNode::Kind::kCommand, call.key());
  node->succeeded = r.success;
  path_.push_back({call.name, call.args, r.success});
  // Time only ever advances by the command cost.
  r.next.time_passed = state_.time_passed + r.cost;
  trace_.steps.push_back({call.key(), r.success ? std::move(r.collected) : std::vector<ObjectId>{}, r.cost});
  state_ = std::move(r.next);
  if (!r.success) {
    stop(Termination::kCommandFailure);
    return false;
  }
  return true;
}

bool SimulatedEngine::do_subtask(const TaskSignature& task) { return refine(task, nullptr); }

bool SimulatedEngine::refine(const TaskSignature& task, const std::vector<MethodInstance>* candidates_override) {
  if (stopped_) return false;
  if (++refinements_ > limits_.depth_limit) {
    stop(Termination::kDepthLimit);
    return false;
  }
  RefinementNode* parent = cursor_;
  RefinementNode* task_node = parent->add(RefinementNode::Kind::kTask, task.key());
  std::vector<MethodInstance> computed;
  const std::vector<MethodInstance>* candidates = candidates_override;
  if (!candidates) {
    computed = applicable_instances(task, state_, methods_);
    candidates = &computed;
  }
  if (candidates->empty()) {
    task_node->succeeded = false;
    stop(Termination::kCommandFailure);
    return false;
  }
  const MethodInstance& chosen = (*candidates)[choose_(task, state_, *candidates)];
  cursor_ = task_node->add(RefinementNode::Kind::kMethod, chosen.key());
  const BodyOutcome outcome = run_body(chosen, *this);
  cursor_->succeeded = outcome.success;
  task_node->succeeded = outcome.success;
  cursor_ = parent;
  if (!outcome.success) stop(Termination::kCommandFailure);
  return outcome.success;
}

}  // namespace rae::upom
