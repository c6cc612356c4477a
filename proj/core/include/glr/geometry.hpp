#pragma once

#include <array>

#include <Eigen/Core>

namespace glr {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians);

/// Counterclockwise rotation by `radians`.
Mat2 rotation(double radians);

/// Planar rigid pose. Heading is kept in (-pi, pi].
class Pose2 {
 public:
  Pose2() = default;
  Pose2(Vec2 position, double heading);

  const Vec2& position() const { return position_; }
  double heading() const { return heading_; }

  Vec2 to_world(const Vec2& local) const;
  Vec2 to_local(const Vec2& world) const;
  /// this * other: express `other` (given in this frame) in the world frame.
  Pose2 compose(const Pose2& other) const;

 private:
  Vec2 position_ = Vec2::Zero();
  double heading_ = 0.0;
};

/// Vehicle footprint: a rectangle centred on `pose`, `length` along the
/// heading and `width` across it.
class OrientedRect {
 public:
  OrientedRect(Pose2 pose, double length, double width);

  const Pose2& pose() const { return pose_; }
  double length() const { return length_; }
  double width() const { return width_; }
  const Vec2& center() const { return pose_.position(); }
  double heading() const { return pose_.heading(); }

 private:
  Pose2 pose_;
  double length_;
  double width_;
};

/// Corners in counterclockwise order starting at front-left:
/// (+L/2, +W/2), (-L/2, +W/2), (-L/2, -W/2), (+L/2, -W/2) in the local frame.
std::array<Vec2, 4> rect_corners(const OrientedRect& rect);

/// Point in the rect's local frame (rect centred at origin, heading along +x).
Vec2 world_to_local(const OrientedRect& rect, const Vec2& p);
Vec2 local_to_world(const OrientedRect& rect, const Vec2& p);

/// Closed-set overlap test (separating axes over the four edge normals).
/// Touching boundaries count as intersecting.
bool rects_intersect(const OrientedRect& a, const OrientedRect& b);

/// Closed point-in-rectangle test.
bool rect_contains(const OrientedRect& rect, const Vec2& p);

}  // namespace glr
