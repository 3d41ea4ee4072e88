#include "rae/acting/engine.hpp"

#include <chrono>
#include <utility>

#include "json.hpp"

namespace rae::acting {

using nlohmann::json;

const char* to_string(CommandStatus s) {
  switch (s) {
    case CommandStatus::kRunning: return "running";
    case CommandStatus::kSuccess: return "success";
    case CommandStatus::kFailure: return "failure";
  }
  return "?";
}

struct Engine::Frame {
  TaskSignature task;
  RefinementNode* task_node = nullptr;
  std::optional<MethodInstance> instance;
  RefinementNode* method_node = nullptr;
  Program program;
  // Retry ledger of this task node.
  std::set<std::string> discarded;
  std::map<std::string, int> attempts;
};

struct Engine::Entry {
  int id = 0;
  TaskSignature root;
  std::unique_ptr<RefinementNode> tree;
  std::vector<Frame> stack;
  bool started = false;
  std::optional<DispatchId> outstanding;
  RefinementNode* command_node = nullptr;
  std::optional<StatusMessage> result;
};

namespace {

json args_json(const Args& args) {
  json a = json::array();
  for (const auto& v : args) {
    std::visit([&](const auto& x) { a.push_back(x); }, v);
  }
  return a;
}

}  // namespace

Engine::Engine(const MethodRegistry& methods, upom::PlanningDomain planning, WorldState initial, QueueTriple& queues,
               EngineConfig config)
    : methods_(methods),
      planning_(std::move(planning)),
      state_(std::move(initial)),
      queues_(queues),
      config_(config) {
  executed_.start_cost = state_.time_passed;
}

Engine::~Engine() = default;

void Engine::emit(const std::string& json_object) { log_.record(json_object); }

bool Engine::submit_task(const TaskSignature& task, std::string* diagnostic) {
  std::string why;
  if (!methods_.has_task(task.name)) {
    why = "unknown task '" + task.name + "'";
  } else if (methods_.arity(task.name) != task.args.size()) {
    why = "task '" + task.name + "' expects " + std::to_string(methods_.arity(task.name)) + " arguments, got " +
          std::to_string(task.args.size());
  }
  if (!why.empty()) {
    if (diagnostic) *diagnostic = why;
    emit(json{{"event", "reject"}, {"task", task.key()}, {"reason", why}}.dump());
    return false;
  }
  queues_.tasks.push(task);
  emit(json{{"event", "submit"}, {"task", task.key()}}.dump());
  return true;
}

void Engine::assign(const std::function<void(WorldState&)>& update) { update(state_); }

bool Engine::idle() const { return agenda_.empty() && queues_.tasks.empty(); }

bool Engine::blocked() const {
  if (agenda_.empty()) return false;
  for (const auto& e : agenda_) {
    if (!e->outstanding || e->result) return false;
  }
  return true;
}

std::size_t Engine::agenda_size() const { return agenda_.size(); }

const RefinementNode* Engine::tree(int entry) const {
  for (const auto* list : {&agenda_, &finished_}) {
    for (const auto& e : *list) {
      if (e->id == entry) return e->tree.get();
    }
  }
  return nullptr;
}

StepReport Engine::step() {
  StepReport report;

  while (auto s = queues_.statuses.try_pop()) {
    auto owner = owners_.find(s->id);
    if (owner == owners_.end()) {
      throw EngineFault("status for unknown dispatch id " + std::to_string(s->id));
    }
    ++report.statuses;
    if (s->status == CommandStatus::kRunning) {
      emit(json{{"event", "status"}, {"id", s->id}, {"status", "running"}}.dump());
      continue;
    }
    if (!terminal_seen_.insert(s->id).second) {
      throw EngineFault("second terminal status for dispatch id " + std::to_string(s->id));
    }
    Entry* entry = nullptr;
    for (auto& e : agenda_) {
      if (e->id == owner->second) entry = e.get();
    }
    if (!entry || entry->outstanding != s->id) {
      throw EngineFault("status " + std::to_string(s->id) + " does not match an outstanding command");
    }
    fold(*s);
    json ev{{"event", "status"},
            {"id", s->id},
            {"status", to_string(s->status)},
            {"cost", s->cost},
            {"time", state_.time_passed}};
    if (!s->collected.empty()) ev["collected"] = s->collected;
    if (!s->reason.empty()) ev["reason"] = s->reason;
    emit(ev.dump());
    entry->result = std::move(*s);
  }

  while (auto t = queues_.tasks.try_pop()) {
    auto e = std::make_unique<Entry>();
    e->id = next_entry_++;
    e->root = std::move(*t);
    emit(json{{"event", "admit"}, {"entry", e->id}, {"task", e->root.key()}}.dump());
    agenda_.push_back(std::move(e));
    ++report.admitted;
  }

  const int dispatches_before = stats_.dispatches;
  for (std::size_t i = 0; i < agenda_.size(); ++i) {
    Entry& e = *agenda_[i];
    bool done = false;
    if (!e.started) {
      e.started = true;
      if (!push_frame(e, e.root, nullptr)) {
        finish(e, false);
        done = true;
      } else {
        done = progress(e);
      }
    } else if (e.outstanding && e.result) {
      StatusMessage s = std::move(*e.result);
      e.result.reset();
      e.outstanding.reset();
      const bool ok = s.status == CommandStatus::kSuccess;
      e.command_node->succeeded = ok;
      e.command_node = nullptr;
      done = ok ? progress(e) : (recover(e) || progress(e));
    }
    if (done) ++report.completed;
  }
  report.dispatched = stats_.dispatches - dispatches_before;

  for (auto it = agenda_.begin(); it != agenda_.end();) {
    if ((*it)->stack.empty() && (*it)->started) {
      finished_.push_back(std::move(*it));
      it = agenda_.erase(it);
    } else {
      ++it;
    }
  }
  return report;
}

// Runs the top body until it issues a command or the entry ends. Returns true
// when the entry has finished.
bool Engine::progress(Entry& e) {
  while (!e.stack.empty()) {
    std::optional<Request> req;
    try {
      req = e.stack.back().program.advance();
    } catch (const std::exception& ex) {
      throw EngineFault(std::string("method body raised: ") + ex.what());
    }
    if (!req) {
      Frame& f = e.stack.back();
      f.method_node->succeeded = true;
      f.task_node->succeeded = true;
      emit(json{{"event", "task_done"}, {"entry", e.id}, {"task", f.task.key()}, {"time", state_.time_passed}}.dump());
      e.stack.pop_back();
      if (e.stack.empty()) {
        finish(e, true);
        return true;
      }
      continue;
    }
    if (auto* call = std::get_if<CommandCall>(&*req)) {
      dispatch(e, *call);
      return false;
    }
    if (auto* task = std::get_if<TaskSignature>(&*req)) {
      RefinementNode* parent = e.stack.back().method_node;
      if (push_frame(e, *task, parent)) continue;
    } else {
      const auto& why = std::get<FailRequest>(*req).reason;
      emit(json{{"event", "body_fail"}, {"entry", e.id}, {"method", e.stack.back().instance->key()}, {"reason", why}}
               .dump());
    }
    if (recover(e)) return true;
  }
  return true;
}

bool Engine::push_frame(Entry& e, const TaskSignature& task, RefinementNode* parent) {
  RefinementNode* node = nullptr;
  if (parent) {
    node = parent->add(RefinementNode::Kind::kTask, task.key());
  } else {
    e.tree = std::make_unique<RefinementNode>();
    e.tree->kind = RefinementNode::Kind::kTask;
    e.tree->label = task.key();
    node = e.tree.get();
  }
  auto inst = choose(e.id, task, {});
  if (!inst) {
    node->succeeded = false;
    emit(json{{"event", "task_failed"}, {"entry", e.id}, {"task", task.key()}, {"reason", "no applicable instance"}}
             .dump());
    return false;
  }
  Frame f;
  f.task = task;
  f.task_node = node;
  e.stack.push_back(std::move(f));
  start_instance(e.stack.back(), *inst, false);
  return true;
}

// Retry procedure on the top frame, unwinding through parents while task
// nodes fail. Returns true when the whole entry has failed.
bool Engine::recover(Entry& e) {
  while (!e.stack.empty()) {
    Frame& f = e.stack.back();
    f.program.reset();
    f.method_node->succeeded = false;
    const std::string key = f.instance->key();
    const int attempts = f.attempts[key];
    if (attempts <= f.instance->retry_count()) {
      ++stats_.retries;
      emit(json{{"event", "retry"}, {"entry", e.id}, {"task", f.task.key()}, {"method", key},
                {"attempt", attempts + 1}, {"max_attempts", f.instance->retry_count() + 1}}
               .dump());
      start_instance(f, *f.instance, true);
      return false;
    }
    f.discarded.insert(key);
    emit(json{{"event", "discard"}, {"entry", e.id}, {"task", f.task.key()}, {"method", key}}.dump());
    if (auto next = choose(e.id, f.task, f.discarded)) {
      ++stats_.switches;
      emit(json{{"event", "switch"}, {"entry", e.id}, {"task", f.task.key()}, {"method", next->key()}}.dump());
      start_instance(f, *next, true);
      return false;
    }
    f.task_node->succeeded = false;
    emit(json{{"event", "task_failed"}, {"entry", e.id}, {"task", f.task.key()}, {"reason", "alternatives exhausted"}}
             .dump());
    e.stack.pop_back();
  }
  finish(e, false);
  return true;
}

std::optional<MethodInstance> Engine::choose(int entry, const TaskSignature& task, const std::set<std::string>& excluded) {
  std::vector<MethodInstance> untried;
  for (auto& inst : applicable_instances(task, state_, methods_)) {
    if (!excluded.count(inst.key())) untried.push_back(std::move(inst));
  }
  if (untried.empty()) return std::nullopt;

  PlannerCall call;
  call.index = plan_index_++;
  call.task = task;
  call.time = state_.time_passed;
  Rng rng(mix_seed(config_.seed, static_cast<std::uint64_t>(call.index)));
  const auto t0 = std::chrono::steady_clock::now();
  call.result = upom::select_method_instance(task, state_, planning_, config_.planner, rng, excluded);
  call.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  planning_seconds_ += call.wall_seconds;
  ++stats_.planner_calls;

  MethodInstance chosen = call.result.chosen ? *call.result.chosen : untried.front();
  call.defaulted = !call.result.chosen.has_value();
  if (call.defaulted) ++stats_.default_choices;
  call.chosen = chosen.key();

  json ev{{"event", "plan"},
          {"entry", entry},
          {"call", call.index},
          {"task", task.key()},
          {"time", call.time},
          {"candidates", call.result.candidates.size()},
          {"rollouts", call.result.records.size()},
          {"chosen", call.chosen},
          {"defaulted", call.defaulted}};
  emit(ev.dump());
  if (on_plan_) on_plan_(call);
  return chosen;
}

void Engine::start_instance(Frame& f, const MethodInstance& inst, bool is_retry) {
  f.instance = inst;
  ++f.attempts[inst.key()];
  f.method_node = f.task_node->add(RefinementNode::Kind::kMethod, inst.key(), is_retry);
  f.program = inst.start(*this);
}

void Engine::dispatch(Entry& e, const CommandCall& call) {
  if (e.outstanding) throw EngineFault("entry " + std::to_string(e.id) + " already has a command outstanding");
  const DispatchId id = next_dispatch_++;
  owners_[id] = e.id;
  calls_[id] = call.key();
  e.outstanding = id;
  e.command_node = e.stack.back().method_node->add(RefinementNode::Kind::kCommand, call.key());
  ++stats_.dispatches;
  emit(json{{"event", "dispatch"},
            {"entry", e.id},
            {"id", id},
            {"command", call.name},
            {"args", args_json(call.args)},
            {"time", state_.time_passed}}
           .dump());
  queues_.commands.push(CommandMessage{id, call});
}

void Engine::fold(const StatusMessage& s) {
  if (!s.state) throw EngineFault("terminal status " + std::to_string(s.id) + " carries no state");
  const WorldState before = state_;
  auto not_visited = std::move(state_.not_visited);
  state_ = *s.state;
  state_.not_visited = std::move(not_visited);
  const auto problems = transition_violations(before, state_);
  if (!problems.empty()) throw EngineFault("state update " + std::to_string(s.id) + " violates: " + problems.front());
  executed_.steps.push_back(upom::TraceStep{calls_.at(s.id), s.collected, s.cost});
}

void Engine::finish(Entry& e, bool success) {
  e.stack.clear();
  completions_.push_back(Completion{e.id, e.root, success});
  emit(json{{"event", "complete"},
            {"entry", e.id},
            {"task", e.root.key()},
            {"success", success},
            {"time", state_.time_passed}}
           .dump());
}

}  // namespace rae::acting
