#pragma once

#include "glr/geometry.hpp"
#include "glr/quadrature.hpp"

namespace glr {

/// Smallest admissible covariance eigenvalue, m^2.
inline constexpr double kMinCovEigenvalue = 1e-12;

/// Bivariate normal with a precomputed inverse covariance and normaliser.
class Gaussian2 {
 public:
  /// Throws InvalidDistribution unless `cov` is symmetric (1e-12 relative)
  /// with both eigenvalues above kMinCovEigenvalue.
  Gaussian2(Vec2 mean, Mat2 cov);

  const Vec2& mean() const { return mean_; }
  const Mat2& cov() const { return cov_; }
  const Mat2& precision() const { return precision_; }
  /// 1 / (2 pi sqrt(det cov)).
  double normalizer() const { return norm_; }

  double pdf(const Vec2& p) const;
  /// Squared Mahalanobis distance of p from the mean.
  double mahalanobis2(const Vec2& p) const;

  /// Same covariance, mean replaced.
  Gaussian2 with_mean(const Vec2& mean) const;
  /// Distribution of R x + t for x ~ this.
  Gaussian2 transformed(const Mat2& r, const Vec2& t) const;

 private:
  Gaussian2(Vec2 mean, Mat2 cov, Mat2 precision, double norm);

  Vec2 mean_;
  Mat2 cov_;
  Mat2 precision_;
  double norm_;  // 1 / (2 pi sqrt(det cov))
};

double pdf(const Gaussian2& g, const Vec2& p);

/// Cubature of the density over an oriented rectangle, clipped to [0, 1].
/// Nodes are laid out on [-L/2, L/2] x [-W/2, W/2] in the rect frame.
double integral_over_rect(const Gaussian2& g, const OrientedRect& rect, const QuadRule& rule);

/// Polar Gauss-Legendre product rule over a disk, clipped to [0, 1].
double integral_over_disk(const Gaussian2& g, const Vec2& center, double radius,
                          int radial_order = 32, int angular_order = 32);

}  // namespace glr
