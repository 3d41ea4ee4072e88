#include "rae/upom/planner.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace rae::upom {

std::string RolloutRecord::path_key() const {
  std::string key;
  for (const auto& step : path) {
    if (!key.empty()) key += ';';
    key += step.command;
    key += rae::to_string(step.args);
    key += step.success ? "=ok" : "=fail";
  }
  return key;
}

std::string decision_key(const TaskSignature& task, const WorldState& state) {
  char hex[20];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(digest(state)));
  return task.key() + '@' + hex;
}

std::size_t ucb_select(const SearchNode& node, const std::vector<MethodInstance>& candidates,
                       double exploration_c, double max_utility) {
  if (candidates.empty()) throw std::invalid_argument("ucb_select needs at least one candidate");
  int total = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const SearchStats* s = node.find(candidates[i].key());
    if (!s || s->n == 0) return i;
    total += s->n;
  }
  const double log_total = std::log(static_cast<double>(total));
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const SearchStats& s = *node.find(candidates[i].key());
    const double exploit = max_utility > 0.0 ? s.q / max_utility : s.q;
    const double value = exploit + exploration_c * std::sqrt(log_total / s.n);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

RolloutRecord rollout(const TaskSignature& task, const WorldState& state, const PlanningDomain& domain,
                      SearchStore& store, Rng& rng, const PlannerConfig& config,
                      const std::vector<MethodInstance>* root_candidates) {
  std::vector<std::pair<std::string, std::string>> decisions;
  RolloutRecord record;
  bool at_root = true;

  ChooseFn choose = [&](const TaskSignature& t, const WorldState& s, const std::vector<MethodInstance>& cands) {
    std::string key = decision_key(t, s);
    const std::size_t i = ucb_select(store.node(key), cands, config.exploration_c, store.max_utility());
    decisions.emplace_back(std::move(key), cands[i].key());
    if (at_root) {
      record.root_candidate = static_cast<int>(i);
      at_root = false;
    }
    return i;
  };
  OutcomeFn outcome = [&](const CommandCall& call, const WorldState& s) {
    return domain.simulator->simulate(call, s, rng);
  };

  SimulatedEngine engine(*domain.methods, state, outcome, choose, {domain.utility.eta, config.depth_limit});
  engine.run(task, root_candidates);

  record.path = engine.path();
  record.terminated_by = engine.termination();
  record.utility = utility(engine.trace(), domain.utility);
  record.end_time = engine.state().time_passed;

  store.observe(record.utility);
  for (const auto& [key, instance] : decisions) {
    SearchStats& s = store.node(key).stats[instance];
    ++s.n;
    s.q += (record.utility - s.q) / s.n;
  }
  return record;
}

PlanResult select_method_instance(const TaskSignature& task, const WorldState& state,
                                  const PlanningDomain& domain, const PlannerConfig& config, Rng& rng,
                                  const std::set<std::string>& excluded) {
  if (config.budget < 1) throw std::invalid_argument("rollout budget must be >= 1");
  PlanResult result;
  for (auto& inst : applicable_instances(task, state, *domain.methods)) {
    if (!excluded.count(inst.key())) result.candidates.push_back(std::move(inst));
  }
  if (result.candidates.empty()) return result;

  const WorldState start = snapshot(state);
  SearchStore store;
  std::vector<bool> completed(result.candidates.size(), false);
  bool any_utility = false;
  result.records.reserve(config.budget);
  for (int b = 0; b < config.budget; ++b) {
    RolloutRecord rec = rollout(task, start, domain, store, rng, config, &result.candidates);
    if (rec.terminated_by == Termination::kCompletion && rec.root_candidate >= 0) {
      completed[rec.root_candidate] = true;
    }
    if (rec.utility != 0.0) any_utility = true;
    result.records.push_back(std::move(rec));
  }

  const SearchNode* root = store.find(decision_key(task, start));
  for (const auto& c : result.candidates) {
    const SearchStats* s = root ? root->find(c.key()) : nullptr;
    result.root_stats.push_back(s ? *s : SearchStats{});
  }

  const bool uninformed = std::find(completed.begin(), completed.end(), false) != completed.end();
  if (!any_utility && uninformed) return result;

  int best = -1;
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    if (result.root_stats[i].n == 0) continue;
    if (best < 0 || result.root_stats[i].q > result.root_stats[best].q) best = static_cast<int>(i);
  }
  if (best >= 0) result.chosen = result.candidates[best];
  return result;
}

std::vector<RolloutCluster> cluster_paths(const std::vector<std::pair<std::string, double>>& rollouts) {
  std::vector<RolloutCluster> clusters;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [key, u] : rollouts) {
    auto [it, inserted] = index.emplace(key, clusters.size());
    if (inserted) clusters.push_back({key, 0, u, u > 1.0});
    ++clusters[it->second].size;
  }
  return clusters;
}

std::vector<RolloutCluster> cluster_rollouts(const std::vector<RolloutRecord>& records) {
  std::vector<std::pair<std::string, double>> keyed;
  keyed.reserve(records.size());
  for (const auto& r : records) keyed.emplace_back(r.path_key(), r.utility);
  return cluster_paths(keyed);
}

}  // namespace rae::upom
