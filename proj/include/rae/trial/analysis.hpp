#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rae/upom/planner.hpp"

namespace rae::trial {

/// Malformed or inconsistent log input.
class LogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CallClusters {
  int call = 0;
  std::string task;
  int budget = 0;
  std::vector<upom::RolloutCluster> clusters;
};

/// Clusters every planner call of a rollout log (one JSON object per line).
std::vector<CallClusters> clusters_from_log(const std::vector<std::string>& lines);

/// CSV with one row per (planner call, cluster):
/// call,task,cluster,size,utility,success,clusters_in_call
std::string heatmap_csv(const std::vector<CallClusters>& calls);

struct ReplayResult {
  std::size_t events = 0;
  std::size_t dispatches = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Re-checks the protocol invariants over a recorded event trace: contiguous
/// sequence numbers, statuses only for earlier dispatches, at most one
/// terminal status per dispatch, one outstanding command per entry,
/// non-decreasing time, attempts within the retry bound, and a planner
/// decision before an entry's first dispatch.
ReplayResult replay_trace(const std::vector<std::string>& lines);

std::vector<std::string> read_lines(const std::string& path);

}  // namespace rae::trial
