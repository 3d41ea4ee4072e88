#pragma once

#include <concepts>
#include <coroutine>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "rae/core/world_state.hpp"
#include "rae/model/value.hpp"

namespace rae {

/// Explicit body-level failure.
struct FailRequest {
  std::string reason;
};

/// What a method body asks of its engine at a step.
using Request = std::variant<CommandCall, TaskSignature, FailRequest>;

/// Coroutine type of method bodies. A body suspends at every command or
/// subtask it issues; the driving engine fulfills the request and resumes it
/// on success. On failure the engine destroys the frame instead, which aborts
/// the body at that step.
class Program {
 public:
  struct promise_type {
    std::optional<Request> pending;
    std::exception_ptr error;

    Program get_return_object() {
      return Program(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    void return_void() {}
    void unhandled_exception() { error = std::current_exception(); }
  };
  using Handle = std::coroutine_handle<promise_type>;

  Program() = default;
  explicit Program(Handle h) : handle_(h) {}
  Program(Program&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  Program& operator=(Program&& other) noexcept {
    if (this != &other) {
      reset();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  Program(const Program&) = delete;
  Program& operator=(const Program&) = delete;
  ~Program() { reset(); }

  bool valid() const { return static_cast<bool>(handle_); }
  bool finished() const { return handle_ && handle_.done(); }

  /// Runs the body up to its next request. std::nullopt means the body ran to
  /// completion. Exceptions thrown by the body are rethrown here.
  std::optional<Request> advance() {
    handle_.resume();
    auto& p = handle_.promise();
    if (p.error) std::rethrow_exception(std::exchange(p.error, nullptr));
    if (handle_.done()) return std::nullopt;
    return std::exchange(p.pending, std::nullopt);
  }

  void reset() {
    if (handle_) handle_.destroy();
    handle_ = {};
  }

 private:
  Handle handle_;
};

struct RequestAwaiter {
  Request request;

  bool await_ready() const noexcept { return false; }
  void await_suspend(Program::Handle h) { h.promise().pending = std::move(request); }
  void await_resume() const noexcept {}
};

inline RequestAwaiter command(std::string name, Args args) {
  return {CommandCall{std::move(name), std::move(args)}};
}
inline RequestAwaiter subtask(std::string name, Args args) {
  return {TaskSignature{std::move(name), std::move(args)}};
}

// Variadic forms. Bodies should prefer these: braced argument lists inside a
// co_await expression crash some GCC 11 releases.
template <class... A>
  requires(sizeof...(A) > 0 && (std::constructible_from<Value, A> && ...))
RequestAwaiter command(std::string name, A&&... args) {
  Args a;
  a.reserve(sizeof...(A));
  (a.emplace_back(std::forward<A>(args)), ...);
  return command(std::move(name), std::move(a));
}
template <class... A>
  requires(sizeof...(A) > 0 && (std::constructible_from<Value, A> && ...))
RequestAwaiter subtask(std::string name, A&&... args) {
  Args a;
  a.reserve(sizeof...(A));
  (a.emplace_back(std::forward<A>(args)), ...);
  return subtask(std::move(name), std::move(a));
}
inline RequestAwaiter fail(std::string reason) { return {FailRequest{std::move(reason)}}; }

/// State access granted to method bodies: read the current state and make
/// state-variable assignments. Commands and subtasks go through co_await.
class EngineHandle {
 public:
  virtual ~EngineHandle() = default;
  virtual const WorldState& state() const = 0;
  virtual void assign(const std::function<void(WorldState&)>& update) = 0;
};

/// An engine that fulfills requests synchronously (the planner's simulated
/// engine, test engines).
class SyncEngine : public EngineHandle {
 public:
  virtual bool do_command(const CommandCall& call) = 0;
  virtual bool do_subtask(const TaskSignature& task) = 0;
};

}  // namespace rae
