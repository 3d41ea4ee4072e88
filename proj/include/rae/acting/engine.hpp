#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rae/acting/queues.hpp"
#include "rae/acting/trace_log.hpp"
#include "rae/model/method.hpp"
#include "rae/model/refinement_tree.hpp"
#include "rae/upom/planner.hpp"

namespace rae::acting {

/// Internal inconsistency that halts the trial.
class EngineFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineConfig {
  upom::PlannerConfig planner;
  std::uint64_t seed = 0;
};

/// One choice point resolved by the engine.
struct PlannerCall {
  int index = 0;
  TaskSignature task;
  std::int64_t time = 0;
  upom::PlanResult result;
  std::string chosen;
  // True when the planner returned none and the first untried instance was
  // taken instead.
  bool defaulted = false;
  double wall_seconds = 0.0;
};

struct StepReport {
  int admitted = 0;
  int statuses = 0;
  int dispatched = 0;
  int completed = 0;
};

/// Outcome of a finished root task.
struct Completion {
  int entry = 0;
  TaskSignature task;
  bool success = false;
};

/// Counters the trace log is also checked against.
struct EngineStats {
  int planner_calls = 0;
  int default_choices = 0;
  int retries = 0;
  int switches = 0;
  int dispatches = 0;
};

class Engine final : public EngineHandle {
 public:
  Engine(const MethodRegistry& methods, upom::PlanningDomain planning, WorldState initial, QueueTriple& queues,
         EngineConfig config);
  ~Engine() override;

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Validates `task` against the registry and enqueues it. On rejection the
  /// queue is unchanged and `diagnostic` (if given) explains why.
  bool submit_task(const TaskSignature& task, std::string* diagnostic = nullptr);

  /// One scheduling quantum: fold arrived statuses, admit new tasks, then
  /// progress every agenda entry round-robin. Throws EngineFault on protocol
  /// violations.
  StepReport step();

  /// No agenda entries and no queued tasks.
  bool idle() const;
  /// Every agenda entry has a command outstanding with no status yet.
  bool blocked() const;

  const WorldState& state() const override { return state_; }
  void assign(const std::function<void(WorldState&)>& update) override;

  const std::vector<Completion>& completions() const { return completions_; }
  const EngineStats& stats() const { return stats_; }
  double planning_seconds() const { return planning_seconds_; }
  const TraceLog& log() const { return log_; }
  const upom::UtilityTrace& executed_trace() const { return executed_; }
  std::size_t agenda_size() const;

  /// Refinement tree of a live or completed entry, or nullptr.
  const RefinementNode* tree(int entry) const;

  /// Called after every resolved choice point.
  void set_plan_observer(std::function<void(const PlannerCall&)> observer) { on_plan_ = std::move(observer); }

 private:
  struct Frame;
  struct Entry;

  bool progress(Entry& e);
  bool push_frame(Entry& e, const TaskSignature& task, RefinementNode* parent);
  bool recover(Entry& e);
  std::optional<MethodInstance> choose(int entry, const TaskSignature& task, const std::set<std::string>& excluded);
  void start_instance(Frame& f, const MethodInstance& inst, bool is_retry);
  void dispatch(Entry& e, const CommandCall& call);
  void fold(const StatusMessage& s);
  void finish(Entry& e, bool success);
  void emit(const std::string& json_object);

  const MethodRegistry& methods_;
  upom::PlanningDomain planning_;
  WorldState state_;
  QueueTriple& queues_;
  EngineConfig config_;

  std::vector<std::unique_ptr<Entry>> agenda_;
  std::vector<std::unique_ptr<Entry>> finished_;
  std::map<DispatchId, int> owners_;
  std::map<DispatchId, std::string> calls_;
  std::set<DispatchId> terminal_seen_;
  DispatchId next_dispatch_ = 1;
  int next_entry_ = 1;
  int plan_index_ = 0;

  std::vector<Completion> completions_;
  EngineStats stats_;
  double planning_seconds_ = 0.0;
  TraceLog log_;
  upom::UtilityTrace executed_;
  std::function<void(const PlannerCall&)> on_plan_;
};

}  // namespace rae::acting
