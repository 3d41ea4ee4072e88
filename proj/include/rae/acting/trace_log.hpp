#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace rae::acting {

/// Append-only JSON-lines event log. Event lines are deterministic; the
/// wall-clock stamp of each event goes to a parallel timing log so the event
/// log of a seeded run is reproducible byte for byte.
class TraceLog {
 public:
  TraceLog() : start_(std::chrono::steady_clock::now()) {}

  /// `json_object` must be a serialized JSON object without the sequence
  /// number; "seq" is prepended.
  void record(const std::string& json_object);

  const std::vector<std::string>& lines() const { return lines_; }
  const std::vector<std::string>& timing() const { return timing_; }

  void write(const std::filesystem::path& events, const std::filesystem::path& timing) const;

 private:
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> lines_;
  std::vector<std::string> timing_;
};

}  // namespace rae::acting
