#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rae/model/method.hpp"
#include "rae/model/refinement_tree.hpp"
#include "rae/upom/utility.hpp"

namespace rae::upom {

struct SimulatedResult {
  bool success = false;
  WorldState next;
  std::int64_t cost = 0;
  std::vector<ObjectId> collected;
};

/// Predicted outcome of one command from a state (the simulated control
/// routine). Implementations may consume randomness.
using OutcomeFn = std::function<SimulatedResult(const CommandCall&, const WorldState&)>;

/// Picks one of `candidates` (never empty) at a decision point.
using ChooseFn = std::function<std::size_t(const TaskSignature& task, const WorldState& state,
                                           const std::vector<MethodInstance>& candidates)>;

enum class Termination { kCompletion, kCommandFailure, kTimeLimit, kDepthLimit };

const char* to_string(Termination t);

struct PathStep {
  std::string command;
  Args args;
  bool success = false;

  bool operator==(const PathStep&) const = default;
};

/// Synchronous engine used for rollouts: refines tasks with a chooser,
/// predicts command outcomes with an outcome function and stops at the first
/// failure, at the time limit, or when the refinement count exceeds
/// `depth_limit`.
class SimulatedEngine final : public SyncEngine {
 public:
  struct Limits {
    std::int64_t eta = 1;
    int depth_limit = 50;
  };

  SimulatedEngine(const MethodRegistry& methods, WorldState start, OutcomeFn outcome, ChooseFn choose,
                  Limits limits);

  /// Refines `task` from the start state. When `root_candidates` is given it
  /// replaces the applicable instances at the root decision.
  bool run(const TaskSignature& task, const std::vector<MethodInstance>* root_candidates = nullptr);

  const WorldState& state() const override { return state_; }
  void assign(const std::function<void(WorldState&)>& update) override { update(state_); }
  bool do_command(const CommandCall& call) override;
  bool do_subtask(const TaskSignature& task) override;

  const std::vector<PathStep>& path() const { return path_; }
  const UtilityTrace& trace() const { return trace_; }
  Termination termination() const { return termination_; }
  const RefinementNode& tree() const { return *root_; }
  int refinements() const { return refinements_; }

 private:
  bool refine(const TaskSignature& task, const std::vector<MethodInstance>* candidates_override);
  void stop(Termination t);

  const MethodRegistry& methods_;
  WorldState state_;
  OutcomeFn outcome_;
  ChooseFn choose_;
  Limits limits_;

  std::vector<PathStep> path_;
  UtilityTrace trace_;
  Termination termination_ = Termination::kCompletion;
  bool stopped_ = false;
  int refinements_ = 0;
  std::unique_ptr<RefinementNode> root_;
  RefinementNode* cursor_ = nullptr;
};

}  // namespace rae::upom
