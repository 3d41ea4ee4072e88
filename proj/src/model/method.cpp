#include "rae/model/method.hpp"

#include <algorithm>
#include <stdexcept>

namespace rae {

void MethodRegistry::declare_task(const std::string& name, std::size_t arity) {
  auto [it, inserted] = arity_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw std::invalid_argument("task '" + name + "' redeclared with a different arity");
  }
  methods_[name];
}

void MethodRegistry::add(MethodDefinition def) {
  if (!has_task(def.task)) throw std::invalid_argument("method '" + def.name + "' refines undeclared task '" + def.task + "'");
  if (!def.body) throw std::invalid_argument("method '" + def.name + "' has no body");
  if (def.retry_count < 0) throw std::invalid_argument("method '" + def.name + "' has negative retry_count");
  methods_[def.task].push_back(std::make_shared<const MethodDefinition>(std::move(def)));
}

std::size_t MethodRegistry::arity(const std::string& name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) throw std::out_of_range("unknown task '" + name + "'");
  return it->second;
}

std::vector<std::string> MethodRegistry::task_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : arity_) out.push_back(name);
  return out;
}

const std::vector<std::shared_ptr<const MethodDefinition>>& MethodRegistry::methods_for(
    const std::string& task) const {
  auto it = methods_.find(task);
  if (it == methods_.end()) throw std::out_of_range("unknown task '" + task + "'");
  return it->second;
}

std::size_t MethodRegistry::size() const {
  std::size_t n = 0;
  for (const auto& [_, defs] : methods_) n += defs.size();
  return n;
}

namespace {

void expand(const std::shared_ptr<const MethodDefinition>& def, const std::vector<ParamDomain>& domains,
            std::size_t depth, Args& bindings, const WorldState& state, std::vector<MethodInstance>& out) {
  if (depth == domains.size()) {
    if (!def->precondition || def->precondition(state, bindings)) out.emplace_back(def, bindings);
    return;
  }
  for (const auto& v : domains[depth]) {
    bindings.push_back(v);
    expand(def, domains, depth + 1, bindings, state, out);
    bindings.pop_back();
  }
}

}  // namespace

std::vector<MethodInstance> applicable_instances(const TaskSignature& task, const WorldState& state,
                                                 const MethodRegistry& registry) {
  if (task.args.size() != registry.arity(task.name)) {
    throw std::invalid_argument("task " + task.key() + " has wrong arity");
  }
  std::vector<MethodInstance> out;
  for (const auto& def : registry.methods_for(task.name)) {
    if (def->trigger != TriggerKind::kTask) continue;
    std::vector<ParamDomain> domains;
    if (def->params) domains = def->params(state, task.args);
    if (domains.size() != def->param_names.size()) {
      throw std::logic_error("method '" + def->name + "' produced " + std::to_string(domains.size()) +
                             " parameter domains for " + std::to_string(def->param_names.size()) +
                             " parameters");
    }
    for (auto& d : domains) {
      std::sort(d.begin(), d.end());
      d.erase(std::unique(d.begin(), d.end()), d.end());
    }
    Args bindings = task.args;
    expand(def, domains, 0, bindings, state, out);
  }
  return out;
}

BodyOutcome run_body(const MethodInstance& instance, SyncEngine& engine) {
  Program program = instance.start(engine);
  std::size_t step = 0;
  while (auto request = program.advance()) {
    ++step;
    if (const auto* call = std::get_if<CommandCall>(&*request)) {
      if (!engine.do_command(*call)) return {false, step, "command " + call->key() + " failed"};
    } else if (const auto* task = std::get_if<TaskSignature>(&*request)) {
      if (!engine.do_subtask(*task)) return {false, step, "subtask " + task->key() + " failed"};
    } else {
      return {false, step, std::get<FailRequest>(*request).reason};
    }
  }
  return {};
}

}  // namespace rae
