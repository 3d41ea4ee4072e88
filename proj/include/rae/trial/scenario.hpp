#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rae/sim/faults.hpp"
#include "rae/sim/world_model.hpp"
#include "rae/upom/planner.hpp"

namespace rae::trial {

/// Schema or consistency violation in a scenario or fault-script file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string name;
  std::string description;
  RobotId robot = "r1";
  Pose2D start;
  std::shared_ptr<const sim::WorldModel> model;
  // Where the objects really are. Objects the robot never perceives stay
  // unknown to it.
  std::map<ObjectId, Pose2D> true_poses;
  upom::UtilityParams utility;
  upom::PlannerConfig planner;
  int drive_retries = 2;
  std::vector<sim::FaultEntry> faults;
};

/// Parses a scenario document. Unknown keys, wrong types and inconsistent
/// values raise ConfigError naming the offending field.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// A fault script on its own: {"faults": [...]}.
std::vector<sim::FaultEntry> parse_fault_script(const std::string& text);
std::vector<sim::FaultEntry> load_fault_script(const std::filesystem::path& path);

}  // namespace rae::trial
