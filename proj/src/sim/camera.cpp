#include "rae/sim/camera.hpp"

#include <cmath>
#include <stdexcept>

namespace rae::sim {

void CameraModel::validate() const {
  if (!(near > 0.0 && near < far)) throw std::invalid_argument("camera needs 0 < near < far");
  for (double fov : {horizontal_fov, vertical_fov}) {
    if (!(fov > 0.0 && fov < std::numbers::pi)) throw std::invalid_argument("camera field of view outside (0, pi)");
  }
}

Eigen::Isometry3d camera_pose_from_joints(double pan, double lift, const Pose2D& robot,
                                          const KinematicsConfig& kin) {
  if (!kin.joints_in_range(pan, lift)) {
    throw std::out_of_range("arm joints (" + std::to_string(pan) + ", " + std::to_string(lift) +
                            ") outside the configured range");
  }
  const Eigen::Isometry3d base = Eigen::Translation3d(robot.x(), robot.y(), 0.0) *
                                 Eigen::AngleAxisd(robot.theta(), Eigen::Vector3d::UnitZ()) *
                                 Eigen::Isometry3d::Identity();
  const Eigen::Vector3d pan_point(kin.pan_axis.x(), kin.pan_axis.y(), 0.0);
  const Eigen::Isometry3d pan_joint = Eigen::Translation3d(pan_point) *
                                      Eigen::AngleAxisd(pan, Eigen::Vector3d::UnitZ()) *
                                      Eigen::Translation3d(-pan_point);
  const Eigen::Isometry3d lift_joint = Eigen::Translation3d(kin.lift_axis) *
                                       Eigen::AngleAxisd(lift, Eigen::Vector3d::UnitY()) *
                                       Eigen::Translation3d(-kin.lift_axis);
  return base * pan_joint * lift_joint * kin.mount;
}

std::array<Eigen::Vector3d, 8> bbox_vertices(const Pose2D& pose, double base_z, const BoundingBox& box) {
  const double c = std::cos(pose.theta());
  const double s = std::sin(pose.theta());
  std::array<Eigen::Vector3d, 8> out;
  std::size_t i = 0;
  for (double sx : {-0.5, 0.5}) {
    for (double sy : {-0.5, 0.5}) {
      for (double z : {base_z, base_z + box.dz}) {
        const double lx = sx * box.dx;
        const double ly = sy * box.dy;
        out[i++] = {pose.x() + c * lx - s * ly, pose.y() + s * lx + c * ly, z};
      }
    }
  }
  return out;
}

bool frustum_contains(const Eigen::Isometry3d& camera, const CameraModel& model,
                      std::span<const Eigen::Vector3d> points) {
  const Eigen::Isometry3d to_camera = camera.inverse();
  const double th = std::tan(0.5 * model.horizontal_fov);
  const double tv = std::tan(0.5 * model.vertical_fov);
  for (const auto& p_world : points) {
    const Eigen::Vector3d p = to_camera * p_world;
    if (p.x() < model.near || p.x() > model.far) return false;
    if (std::abs(p.y()) > p.x() * th) return false;
    if (std::abs(p.z()) > p.x() * tv) return false;
  }
  return true;
}

}  // namespace rae::sim
