#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rae/core/world_state.hpp"
#include "rae/model/value.hpp"

namespace rae::acting {

/// Single-producer/single-consumer FIFO usable across threads.
template <class T>
class Channel {
 public:
  void push(T value) {
    {
      std::lock_guard lock(mu_);
      items_.push_back(std::move(value));
    }
    cv_.notify_one();
  }

  std::optional<T> try_pop() {
    std::lock_guard lock(mu_);
    if (items_.empty()) return std::nullopt;
    T v = std::move(items_.front());
    items_.pop_front();
    return v;
  }

  /// Blocks until an item arrives or the channel is closed and drained.
  std::optional<T> pop() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    T v = std::move(items_.front());
    items_.pop_front();
    return v;
  }

  /// Blocks until an item is available or the channel is closed.
  void wait() const {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return !items_.empty() || closed_; });
  }

  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

  bool empty() const {
    std::lock_guard lock(mu_);
    return items_.empty();
  }
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return items_.size();
  }

 private:
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  std::deque<T> items_;
  bool closed_ = false;
};

using DispatchId = std::uint64_t;

struct CommandMessage {
  DispatchId id = 0;
  CommandCall call;
};

enum class CommandStatus { kRunning, kSuccess, kFailure };

const char* to_string(CommandStatus s);

struct StatusMessage {
  DispatchId id = 0;
  CommandStatus status = CommandStatus::kRunning;
  // Executor-reported state after the command; set on terminal statuses.
  std::optional<WorldState> state;
  std::int64_t cost = 0;
  std::vector<ObjectId> collected;
  std::string reason;
};

/// The three queues between user, engine and executor.
struct QueueTriple {
  Channel<TaskSignature> tasks;
  Channel<CommandMessage> commands;
  Channel<StatusMessage> statuses;
};

}  // namespace rae::acting
