#pragma once

#include <array>
#include <span>

#include <Eigen/Geometry>

#include "rae/core/pose.hpp"
#include "rae/core/world_state.hpp"

namespace rae::sim {

struct CameraModel {
  double horizontal_fov = 60.0 * std::numbers::pi / 180.0;
  double vertical_fov = 45.0 * std::numbers::pi / 180.0;
  double near = 0.3;
  double far = 2.5;

  void validate() const;
};

/// Pan rotates about a vertical axis through `pan_axis` (robot frame); lift
/// pitches about a horizontal axis through `lift_axis` (frame after pan).
/// `mount` is the camera pose in the robot frame at zero joints. Camera frame:
/// x along the optical axis, y left, z up; positive lift tilts the view down.
struct KinematicsConfig {
  Eigen::Vector2d pan_axis{0.2, 0.0};
  Eigen::Vector3d lift_axis{0.3, 0.0, 1.3};
  Eigen::Isometry3d mount = Eigen::Translation3d(0.3, 0.0, 1.3) * Eigen::Isometry3d::Identity();
  double pan_min = -1.6;
  double pan_max = 1.6;
  double lift_min = -0.2;
  double lift_max = 1.5;

  bool joints_in_range(double pan, double lift) const {
    return pan >= pan_min && pan <= pan_max && lift >= lift_min && lift <= lift_max;
  }
};

/// Camera pose in the world frame. Throws std::out_of_range for joints
/// outside the configured ranges.
Eigen::Isometry3d camera_pose_from_joints(double pan, double lift, const Pose2D& robot,
                                          const KinematicsConfig& kinematics);

/// The 8 corners of a box resting at height `base_z` with footprint centered
/// at `pose` and yawed by pose.theta.
std::array<Eigen::Vector3d, 8> bbox_vertices(const Pose2D& pose, double base_z, const BoundingBox& box);

/// True iff every point lies inside the near, far and four side planes.
bool frustum_contains(const Eigen::Isometry3d& camera, const CameraModel& model,
                      std::span<const Eigen::Vector3d> points);

}  // namespace rae::sim
