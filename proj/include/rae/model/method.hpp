#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rae/model/program.hpp"

namespace rae {

using ParamDomain = std::vector<Value>;

enum class TriggerKind { kTask, kEvent };

/// A refinement method: how to accomplish `task`. Bindings passed to the
/// precondition and body are the task arguments followed by the free
/// parameters, in `param_names` order.
struct MethodDefinition {
  std::string name;
  std::string task;
  TriggerKind trigger = TriggerKind::kTask;
  std::vector<std::string> param_names;
  // One finite domain per free parameter. May be empty when the method has no
  // free parameters.
  std::function<std::vector<ParamDomain>(const WorldState&, const Args& task_args)> params;
  std::function<bool(const WorldState&, const Args& bindings)> precondition;
  std::function<Program(EngineHandle&, Args bindings)> body;
  int retry_count = 0;
};

class MethodInstance {
 public:
  MethodInstance(std::shared_ptr<const MethodDefinition> definition, Args bindings)
      : definition_(std::move(definition)), bindings_(std::move(bindings)) {}

  const MethodDefinition& definition() const { return *definition_; }
  const Args& bindings() const { return bindings_; }
  const std::string& name() const { return definition_->name; }
  int retry_count() const { return definition_->retry_count; }

  /// "method(b1,b2,...)", unique per instance.
  std::string key() const { return definition_->name + to_string(bindings_); }

  Program start(EngineHandle& engine) const { return definition_->body(engine, bindings_); }

  bool operator==(const MethodInstance& other) const {
    return definition_ == other.definition_ && bindings_ == other.bindings_;
  }

 private:
  std::shared_ptr<const MethodDefinition> definition_;
  Args bindings_;
};

class MethodRegistry {
 public:
  /// Declares a task name with fixed arity.
  void declare_task(const std::string& name, std::size_t arity);
  /// Registers a method for an already declared task. Order of registration
  /// is the order instances are enumerated in.
  void add(MethodDefinition def);

  bool has_task(const std::string& name) const { return arity_.count(name) > 0; }
  std::size_t arity(const std::string& name) const;
  std::vector<std::string> task_names() const;
  const std::vector<std::shared_ptr<const MethodDefinition>>& methods_for(const std::string& task) const;
  std::size_t size() const;

 private:
  std::map<std::string, std::size_t> arity_;
  std::map<std::string, std::vector<std::shared_ptr<const MethodDefinition>>> methods_;
};

/// Expands every method for `task` against `state`: Cartesian product over the
/// free-parameter domains, filtered by precondition. Ordered by registration
/// order, then lexicographically by bindings.
std::vector<MethodInstance> applicable_instances(const TaskSignature& task, const WorldState& state,
                                                 const MethodRegistry& registry);

struct BodyOutcome {
  bool success = true;
  // 1-based index of the request that failed; 0 on success.
  std::size_t failed_step = 0;
  std::string reason;
};

/// Runs a body to completion against a synchronous engine.
BodyOutcome run_body(const MethodInstance& instance, SyncEngine& engine);

}  // namespace rae
