#include "glr/geometry.hpp"

#include <cmath>
#include <numbers>

#include "glr/errors.hpp"

namespace glr {

double normalize_angle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double a = std::fmod(radians, kTwoPi);
  if (a <= -std::numbers::pi) {
    a += kTwoPi;
  } else if (a > std::numbers::pi) {
    a -= kTwoPi;
  }
  return a;
}

Mat2 rotation(double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

Pose2::Pose2(Vec2 position, double heading)
    : position_(std::move(position)), heading_(normalize_angle(heading)) {}

Vec2 Pose2::to_world(const Vec2& local) const {
  return position_ + rotation(heading_) * local;
}

Vec2 Pose2::to_local(const Vec2& world) const {
  return rotation(heading_).transpose() * (world - position_);
}

Pose2 Pose2::compose(const Pose2& other) const {
  return Pose2(to_world(other.position()), heading_ + other.heading());
}

OrientedRect::OrientedRect(Pose2 pose, double length, double width)
    : pose_(std::move(pose)), length_(length), width_(width) {
  if (!(length > 0.0) || !(width > 0.0)) {
    throw InvalidArgument("OrientedRect: length and width must be positive");
  }
}

std::array<Vec2, 4> rect_corners(const OrientedRect& rect) {
  const double hl = 0.5 * rect.length();
  const double hw = 0.5 * rect.width();
  const Mat2 r = rotation(rect.heading());
  const Vec2& c = rect.center();
  return {c + r * Vec2(hl, hw), c + r * Vec2(-hl, hw), c + r * Vec2(-hl, -hw),
          c + r * Vec2(hl, -hw)};
}

Vec2 world_to_local(const OrientedRect& rect, const Vec2& p) {
  return rect.pose().to_local(p);
}

Vec2 local_to_world(const OrientedRect& rect, const Vec2& p) {
  return rect.pose().to_world(p);
}

namespace {

// Projects `other` onto the two axes of `self`; true if a separating axis exists.
bool separated_on_axes_of(const OrientedRect& self, const OrientedRect& other) {
  const double c = std::cos(self.heading());
  const double s = std::sin(self.heading());
  const Vec2 ax(c, s);
  const Vec2 ay(-s, c);
  const double oc = std::cos(other.heading());
  const double os = std::sin(other.heading());
  const Vec2 ox(oc, os);
  const Vec2 oy(-os, oc);
  const Vec2 d = other.center() - self.center();
  const double ohl = 0.5 * other.length();
  const double ohw = 0.5 * other.width();

  const double rx = ohl * std::abs(ox.dot(ax)) + ohw * std::abs(oy.dot(ax));
  if (std::abs(d.dot(ax)) > 0.5 * self.length() + rx) {
    return true;
  }
  const double ry = ohl * std::abs(ox.dot(ay)) + ohw * std::abs(oy.dot(ay));
  return std::abs(d.dot(ay)) > 0.5 * self.width() + ry;
}

}  // namespace

bool rects_intersect(const OrientedRect& a, const OrientedRect& b) {
  return !separated_on_axes_of(a, b) && !separated_on_axes_of(b, a);
}

bool rect_contains(const OrientedRect& rect, const Vec2& p) {
  const Vec2 q = world_to_local(rect, p);
  return std::abs(q.x()) <= 0.5 * rect.length() && std::abs(q.y()) <= 0.5 * rect.width();
}

}  // namespace glr
