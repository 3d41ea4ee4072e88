#pragma once

#include <memory>
#include <string>

#include "rae/collection/domain.hpp"
#include "rae/sim/commands.hpp"
#include "rae/trial/scenario.hpp"

namespace fixtures {

inline std::string scenario_path(const std::string& file) { return std::string(RAE_SCENARIO_DIR) + "/" + file; }

inline rae::trial::Scenario study(const std::string& file = "study_1_1_box.json") {
  return rae::trial::load_scenario(scenario_path(file));
}

/// Belief with every object already perceived at its true pose.
inline rae::WorldState observed_state(const rae::trial::Scenario& sc) {
  rae::WorldState s = rae::collection::initial_belief(*sc.model, sc.start, sc.robot);
  for (const auto& [o, p] : sc.true_poses) s.object_poses[o] = p;
  rae::refresh_facts(s, sc.model->geometry);
  return s;
}

/// Copy of the scenario model with perception noise switched off.
inline std::shared_ptr<rae::sim::WorldModel> noiseless(const rae::trial::Scenario& sc) {
  auto m = std::make_shared<rae::sim::WorldModel>(*sc.model);
  m->perception.noise_sigma = 0.0;
  return m;
}

/// Noiseless model where every command and grasp succeeds.
inline std::shared_ptr<rae::sim::WorldModel> certain(const rae::trial::Scenario& sc) {
  auto m = noiseless(sc);
  for (const auto& n : m->commands.names()) m->commands.mutable_get(n).success_probability = 1.0;
  for (auto& [id, spec] : m->geometry.objects) spec.success_probability = 1.0;
  return m;
}

}  // namespace fixtures
