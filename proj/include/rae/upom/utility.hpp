#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rae/core/world_state.hpp"

namespace rae::upom {

/// Constants of the rollout utility. c1 + c2 must equal 1.
struct UtilityParams {
  double c1 = 0.4;
  double c2 = 0.6;
  // Decay per discrete cost unit.
  double k = 0.05;
  // Time limit eta on the cumulative cost.
  std::int64_t eta = 1;
  std::map<ObjectId, double> rewards;

  double reward(const ObjectId& o) const {
    auto it = rewards.find(o);
    return it == rewards.end() ? 0.0 : it->second;
  }

  /// Throws std::invalid_argument unless c1 + c2 = 1 (1e-12), k > 0, eta >= 1.
  void validate() const;
};

/// One step of an executed or simulated trace.
struct TraceStep {
  std::string action;
  // Objects that reached the target table in this step.
  std::vector<ObjectId> collected;
  std::int64_t cost = 0;
};

struct UtilityTrace {
  // Cumulative cost already spent before the first step.
  std::int64_t start_cost = 0;
  std::vector<TraceStep> steps;

  std::int64_t total_cost() const {
    std::int64_t c = start_cost;
    for (const auto& s : steps) c += s.cost;
    return c;
  }
};

/// Sum over steps of R(collected) * (c1 + c2 * exp(-k * C_i)), C_i the
/// cumulative cost through step i. Objects collected before a failure keep
/// their contribution.
double utility(const UtilityTrace& trace, const UtilityParams& params);

/// Contribution of one object collected at cumulative cost `cumulative_cost`.
double collection_term(double reward, std::int64_t cumulative_cost, const UtilityParams& params);

}  // namespace rae::upom
