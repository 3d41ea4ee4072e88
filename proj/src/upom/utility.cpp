#include "rae/upom/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace rae::upom {

void UtilityParams::validate() const {
  if (std::abs(c1 + c2 - 1.0) > 1e-12) throw std::invalid_argument("utility constants must satisfy c1 + c2 = 1");
  if (!(k > 0.0)) throw std::invalid_argument("utility decay k must be > 0");
  if (eta < 1) throw std::invalid_argument("time limit eta must be >= 1");
  for (const auto& [o, r] : rewards) {
    if (!(r >= 0.0)) throw std::invalid_argument("reward of " + o + " must be >= 0");
  }
}

double collection_term(double reward, std::int64_t cumulative_cost, const UtilityParams& params) {
  return reward * (params.c1 + params.c2 * std::exp(-params.k * static_cast<double>(cumulative_cost)));
}

double utility(const UtilityTrace& trace, const UtilityParams& params) {
  double u = 0.0;
  std::int64_t cumulative = trace.start_cost;
  for (const auto& step : trace.steps) {
    cumulative += step.cost;
    for (const auto& o : step.collected) u += collection_term(params.reward(o), cumulative, params);
  }
  return u;
}

}  // namespace rae::upom
