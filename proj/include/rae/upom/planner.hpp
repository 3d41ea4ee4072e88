#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rae/core/random.hpp"
#include "rae/upom/simulated_engine.hpp"

namespace rae::upom {

/// Predicts command outcomes for rollouts, drawing randomness from `rng`.
class CommandSimulator {
 public:
  virtual ~CommandSimulator() = default;
  virtual SimulatedResult simulate(const CommandCall& call, const WorldState& state, Rng& rng) const = 0;
};

/// What the planner needs to know about a domain.
struct PlanningDomain {
  const MethodRegistry* methods = nullptr;
  const CommandSimulator* simulator = nullptr;
  UtilityParams utility;
};

struct PlannerConfig {
  int budget = 100;
  double exploration_c = std::numbers::sqrt2;
  int depth_limit = 50;
};

struct RolloutRecord {
  std::vector<PathStep> path;
  double utility = 0.0;
  Termination terminated_by = Termination::kCompletion;
  // Index into the root candidate list, or -1 when there was none.
  int root_candidate = -1;
  std::int64_t end_time = 0;

  /// Identity of the action/parameter/outcome sequence.
  std::string path_key() const;
};

struct SearchStats {
  int n = 0;
  double q = 0.0;
};

/// Statistics of one decision point (task + state), per candidate key.
struct SearchNode {
  std::unordered_map<std::string, SearchStats> stats;

  const SearchStats* find(const std::string& key) const {
    auto it = stats.find(key);
    return it == stats.end() ? nullptr : &it->second;
  }
};

class SearchStore {
 public:
  SearchNode& node(const std::string& key) { return nodes_[key]; }
  const SearchNode* find(const std::string& key) const {
    auto it = nodes_.find(key);
    return it == nodes_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return nodes_.size(); }

  double max_utility() const { return max_utility_; }
  void observe(double u) {
    if (u > max_utility_) max_utility_ = u;
  }

 private:
  std::unordered_map<std::string, SearchNode> nodes_;
  double max_utility_ = 0.0;
};

/// Key of the decision point for `task` in `state`.
std::string decision_key(const TaskSignature& task, const WorldState& state);

/// Never-tried candidates first (in order); otherwise the argmax of
/// Q / U_max + c * sqrt(ln N / n), ties to the earliest candidate.
/// `max_utility` is the running maximum observed utility; when it is zero Q is
/// used unnormalized. Precondition: candidates is nonempty.
std::size_t ucb_select(const SearchNode& node, const std::vector<MethodInstance>& candidates,
                       double exploration_c, double max_utility = 0.0);

/// One simulated execution of `task` from `state`, choosing instances by UCB
/// and backing up the utility into `store`.
RolloutRecord rollout(const TaskSignature& task, const WorldState& state, const PlanningDomain& domain,
                      SearchStore& store, Rng& rng, const PlannerConfig& config,
                      const std::vector<MethodInstance>* root_candidates = nullptr);

struct PlanResult {
  // Empty when there was no candidate, or planning found no information.
  std::optional<MethodInstance> chosen;
  std::vector<MethodInstance> candidates;
  std::vector<RolloutRecord> records;
  std::vector<SearchStats> root_stats;
};

/// Runs exactly config.budget rollouts for `task` and returns the root
/// candidate with the highest mean utility. Instances whose key is in
/// `excluded` are not considered.
PlanResult select_method_instance(const TaskSignature& task, const WorldState& state,
                                  const PlanningDomain& domain, const PlannerConfig& config, Rng& rng,
                                  const std::set<std::string>& excluded = {});

/// A group of rollouts with identical paths.
struct RolloutCluster {
  std::string path_key;
  int size = 0;
  double utility = 0.0;
  bool success = false;
};

/// Partition of `records` by path, ordered by first appearance. A cluster is
/// a success when its utility exceeds 1.0.
std::vector<RolloutCluster> cluster_rollouts(const std::vector<RolloutRecord>& records);

/// Same partition over (path key, utility) pairs, e.g. read back from a log.
std::vector<RolloutCluster> cluster_paths(const std::vector<std::pair<std::string, double>>& rollouts);

}  // namespace rae::upom
