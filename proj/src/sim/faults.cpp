#include "rae/sim/faults.hpp"

#include <stdexcept>

namespace rae::sim {

const char* to_string(FaultEntry::Effect e) {
  switch (e) {
    case FaultEntry::Effect::kFail:
      return "fail";
    case FaultEntry::Effect::kFailUntilAttempt:
      return "fail_until_attempt";
    case FaultEntry::Effect::kSuppressDetection:
      return "suppress_detection";
  }
  return "?";
}

FaultScript::FaultScript(std::vector<FaultEntry> entries) : entries_(std::move(entries)), matches_(entries_.size(), 0) {
  for (const auto& e : entries_) {
    if (e.from < 1) throw std::invalid_argument("fault ordinals start at 1");
    if (e.to && *e.to < e.from) throw std::invalid_argument("fault range ends before it starts");
    if (e.effect == FaultEntry::Effect::kFailUntilAttempt && e.attempt < 1) {
      throw std::invalid_argument("fail_until_attempt needs attempt >= 1");
    }
    if (e.effect == FaultEntry::Effect::kSuppressDetection && e.object.empty()) {
      throw std::invalid_argument("suppress_detection needs an object");
    }
  }
}

FaultVerdict FaultScript::on_dispatch(const CommandCall& call, const CommandTable& table) {
  FaultVerdict verdict;
  std::map<std::string, Value> named;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const FaultEntry& e = entries_[i];
    if (e.effect == FaultEntry::Effect::kSuppressDetection && e.command.empty()) {
      if (call.name != "perceive_table" && call.name != "read_current_pose") continue;
    } else if (!e.command.empty() && e.command != call.name) {
      continue;
    }
    if (!e.args.empty()) {
      if (named.empty()) named = table.named_args(call);
      bool match = true;
      for (const auto& [k, v] : e.args) {
        auto it = named.find(k);
        if (it == named.end() || rae::to_string(it->second) != v) {
          match = false;
          break;
        }
      }
      if (!match) continue;
    }
    const int ordinal = ++matches_[i];
    if (ordinal < e.from) continue;
    switch (e.effect) {
      case FaultEntry::Effect::kFail:
        if (!e.to || ordinal <= *e.to) {
          verdict.fail = true;
          verdict.reason = "scripted fault on " + call.key();
        }
        break;
      case FaultEntry::Effect::kFailUntilAttempt:
        if (ordinal - e.from + 1 < e.attempt) {
          verdict.fail = true;
          verdict.reason = "scripted fault on " + call.key() + " (attempt " + std::to_string(ordinal - e.from + 1) + ")";
        }
        break;
      case FaultEntry::Effect::kSuppressDetection:
        if (!e.to || ordinal <= *e.to) verdict.suppressed.insert(e.object);
        break;
    }
  }
  return verdict;
}

}  // namespace rae::sim
