#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rae/core/random.hpp"
#include "rae/sim/world_model.hpp"
#include "rae/upom/planner.hpp"

namespace rae::sim {

/// Why `call` is not applicable in `s`, or std::nullopt when it is.
std::optional<std::string> precondition_failure(const WorldModel& model, const CommandCall& call,
                                                const WorldState& s);

/// Applies the nominal success effect of `call` to `s` (time is not touched).
/// For perceive_table and read_current_pose only the arm and pose bookkeeping
/// shared by both twins is applied; detection is the caller's business.
/// Returns the objects that reached the target table.
std::vector<ObjectId> apply_success(const WorldModel& model, const CommandCall& call, WorldState& s);

/// Free placement spot for `o` on table `tb`, scanning a grid in row-major
/// order; std::nullopt when the table is full.
std::optional<Pose2D> placement_pose(const WorldModel& model, const WorldState& s, const ObjectId& o,
                                     const TableId& tb);

/// Planner-side twin: checks the precondition on `state`, samples success
/// (grasp with the object's probability, everything else with the command's),
/// applies the effect to a private copy and charges the cost either way.
upom::SimulatedResult simulate_command(const WorldModel& model, const CommandCall& call, const WorldState& state,
                                       Rng& rng);

class CollectionSimulator final : public upom::CommandSimulator {
 public:
  explicit CollectionSimulator(const WorldModel& model) : model_(model) {}
  upom::SimulatedResult simulate(const CommandCall& call, const WorldState& state, Rng& rng) const override {
    return simulate_command(model_, call, state, rng);
  }

 private:
  const WorldModel& model_;
};

}  // namespace rae::sim
