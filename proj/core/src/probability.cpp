#include "glr/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "glr/errors.hpp"

namespace glr {

namespace {

double clip_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

Gaussian2::Gaussian2(Vec2 mean, Mat2 cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw InvalidDistribution("Gaussian2: non-finite mean or covariance");
  }
  const double off = std::abs(cov_(0, 1) - cov_(1, 0));
  const double scale = std::max({std::abs(cov_(0, 0)), std::abs(cov_(1, 1)),
                                 std::abs(cov_(0, 1)), std::abs(cov_(1, 0))});
  if (off > 1e-12 * scale) {
    throw InvalidDistribution("Gaussian2: covariance is not symmetric");
  }
  const double sym = 0.5 * (cov_(0, 1) + cov_(1, 0));
  cov_(0, 1) = sym;
  cov_(1, 0) = sym;
  const double tr = cov_(0, 0) + cov_(1, 1);
  const double det = cov_(0, 0) * cov_(1, 1) - sym * sym;
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  const double min_eig = 0.5 * tr - disc;
  if (!(min_eig > kMinCovEigenvalue)) {
    throw InvalidDistribution("Gaussian2: covariance is not positive definite (min eigenvalue " +
                              std::to_string(min_eig) + " m^2)");
  }
  precision_ << cov_(1, 1) / det, -sym / det, -sym / det, cov_(0, 0) / det;
  norm_ = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
}

Gaussian2::Gaussian2(Vec2 mean, Mat2 cov, Mat2 precision, double norm)
    : mean_(std::move(mean)), cov_(std::move(cov)), precision_(std::move(precision)), norm_(norm) {}

double Gaussian2::mahalanobis2(const Vec2& p) const {
  const double dx = p.x() - mean_.x();
  const double dy = p.y() - mean_.y();
  return precision_(0, 0) * dx * dx + 2.0 * precision_(0, 1) * dx * dy + precision_(1, 1) * dy * dy;
}

double Gaussian2::pdf(const Vec2& p) const { return norm_ * std::exp(-0.5 * mahalanobis2(p)); }

Gaussian2 Gaussian2::with_mean(const Vec2& mean) const {
  return Gaussian2(mean, cov_, precision_, norm_);
}

Gaussian2 Gaussian2::transformed(const Mat2& r, const Vec2& t) const {
  Mat2 cov = r * cov_ * r.transpose();
  const double sym = 0.5 * (cov(0, 1) + cov(1, 0));
  cov(0, 1) = sym;
  cov(1, 0) = sym;
  return Gaussian2(r * mean_ + t, cov);
}

double pdf(const Gaussian2& g, const Vec2& p) { return g.pdf(p); }

double integral_over_rect(const Gaussian2& g, const OrientedRect& rect, const QuadRule& rule) {
  // Work in the rect frame: rotate the mean offset and the precision once,
  // then the cubature nodes are a fixed axis-aligned grid.
  const double hl = 0.5 * rect.length();
  const double hw = 0.5 * rect.width();
  const Mat2 r = rotation(rect.heading());
  const Vec2 m = r.transpose() * (g.mean() - rect.center());
  const Mat2 p = r.transpose() * g.precision() * r;
  const double p00 = p(0, 0);
  const double p01 = 0.5 * (p(0, 1) + p(1, 0));
  const double p11 = p(1, 1);
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double dy = hw * nodes[j] - m.y();
    double inner = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double dx = hl * nodes[i] - m.x();
      inner += weights[i] * std::exp(-0.5 * (p00 * dx * dx + 2.0 * p01 * dx * dy + p11 * dy * dy));
    }
    sum += weights[j] * inner;
  }
  return clip_unit(hl * hw * g.normalizer() * sum);
}

double integral_over_disk(const Gaussian2& g, const Vec2& center, double radius, int radial_order,
                          int angular_order) {
  if (!(radius > 0.0)) {
    throw InvalidArgument("integral_over_disk: radius must be positive");
  }
  const QuadRule& radial = gauss_legendre_rule(radial_order);
  const QuadRule& angular = gauss_legendre_rule(angular_order);
  const double half_r = 0.5 * radius;
  const double half_theta = std::numbers::pi;
  double sum = 0.0;
  for (int j = 0; j < angular.order(); ++j) {
    const double theta = half_theta * angular.nodes()[j] + half_theta;
    const Vec2 dir(std::cos(theta), std::sin(theta));
    double inner = 0.0;
    for (int i = 0; i < radial.order(); ++i) {
      const double rr = half_r * radial.nodes()[i] + half_r;
      inner += radial.weights()[i] * rr * g.pdf(center + rr * dir);
    }
    sum += angular.weights()[j] * inner;
  }
  return clip_unit(half_r * half_theta * sum);
}

}  // namespace glr
