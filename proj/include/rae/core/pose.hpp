#pragma once

#include <cmath>
#include <numbers>

namespace rae {

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
  if (!std::isfinite(a)) return a;
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

/// Planar pose (x, y, theta). theta is kept in (-pi, pi].
class Pose2D {
 public:
  constexpr Pose2D() = default;
  Pose2D(double x, double y, double theta) : x_(x), y_(y), theta_(normalize_angle(theta)) {}

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }

  /// this * other: other is expressed in this pose's frame.
  Pose2D compose(const Pose2D& other) const {
    const double c = std::cos(theta_);
    const double s = std::sin(theta_);
    return {x_ + c * other.x_ - s * other.y_, y_ + s * other.x_ + c * other.y_,
            theta_ + other.theta_};
  }

  bool operator==(const Pose2D&) const = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

/// Euclidean distance on (x, y); orientation is ignored.
inline double distance(const Pose2D& a, const Pose2D& b) {
  return std::hypot(a.x() - b.x(), a.y() - b.y());
}

}  // namespace rae
