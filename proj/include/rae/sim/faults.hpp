#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rae/sim/world_model.hpp"

namespace rae::sim {

/// One scripted intervention. `command` and `args` select matching dispatches;
/// ordinals count matching dispatches from 1.
struct FaultEntry {
  enum class Effect { kFail, kFailUntilAttempt, kSuppressDetection };

  Effect effect = Effect::kFail;
  // Empty matches every command (suppress_detection defaults to perception
  // commands).
  std::string command;
  std::map<std::string, std::string> args;
  int from = 1;
  // Last failing ordinal for kFail; unbounded when unset.
  std::optional<int> to;
  // For kFailUntilAttempt: ordinals from..from+attempt-2 fail.
  int attempt = 1;
  ObjectId object;
};

struct FaultVerdict {
  bool fail = false;
  std::string reason;
  std::set<ObjectId> suppressed;
};

class FaultScript {
 public:
  FaultScript() = default;
  explicit FaultScript(std::vector<FaultEntry> entries);

  /// Advances the per-entry match counters for one dispatch and reports what
  /// the script does to it.
  FaultVerdict on_dispatch(const CommandCall& call, const CommandTable& table);

  const std::vector<FaultEntry>& entries() const { return entries_; }

 private:
  std::vector<FaultEntry> entries_;
  std::vector<int> matches_;
};

const char* to_string(FaultEntry::Effect e);

}  // namespace rae::sim
