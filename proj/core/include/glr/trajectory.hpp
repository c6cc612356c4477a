#pragma once

#include <vector>

#include "glr/geometry.hpp"
#include "glr/probability.hpp"
#include "glr/rng.hpp"

namespace glr {

/// Bernstein basis values b_{i,d}(tau), i = 0..d.
std::vector<double> bernstein_basis(int degree, double tau);

/// Deterministic planar Bezier curve over t in [0, horizon].
class BezierCurve {
 public:
  BezierCurve(std::vector<Vec2> control_points, double horizon);

  int degree() const { return static_cast<int>(control_points_.size()) - 1; }
  const std::vector<Vec2>& control_points() const { return control_points_; }
  double horizon() const { return horizon_; }

  /// Throws DomainError for t outside [0, horizon].
  Vec2 evaluate(double t) const;
  /// dP/dt in m/s.
  Vec2 velocity(double t) const;

 private:
  std::vector<Vec2> control_points_;
  double horizon_;
};

/// Speeds below this (m/s) have no usable heading.
inline constexpr double kMinHeadingSpeed = 1e-3;

/// atan2 of the hodograph at t. Below kMinHeadingSpeed the heading of the
/// nearest earlier time with valid speed is used, or 0 if there is none.
double heading(const BezierCurve& curve, double t);

/// Bezier curve with independent Gaussian control points.
class ProbBezierCurve {
 public:
  /// Covariances must be symmetric positive semidefinite; marginals are
  /// checked for definiteness when formed.
  ProbBezierCurve(std::vector<Vec2> mean_points, std::vector<Mat2> point_covs, double horizon);

  int degree() const { return static_cast<int>(mean_points_.size()) - 1; }
  const std::vector<Vec2>& mean_points() const { return mean_points_; }
  const std::vector<Mat2>& point_covs() const { return point_covs_; }
  double horizon() const { return horizon_; }

  const BezierCurve& mean_curve() const { return mean_curve_; }

 private:
  std::vector<Vec2> mean_points_;
  std::vector<Mat2> point_covs_;
  double horizon_;
  BezierCurve mean_curve_;
};

/// Position marginal at t: mean sum b_i mu_i, covariance sum b_i^2 Sigma_i.
Gaussian2 marginal_at(const ProbBezierCurve& pbc, double t);

/// One coherent trajectory: every control point drawn once from its Gaussian.
BezierCurve sample_trajectory(const ProbBezierCurve& pbc, Rng& rng);

/// Timestamped positions of one vehicle.
struct SampledTrack {
  std::vector<double> timestamps;
  std::vector<Vec2> positions;

  /// Throws ValidationError naming the first offending index.
  void validate() const;
};

struct BezierFit {
  BezierCurve curve;
  double residual_rms;
};

/// Endpoint-pinned least squares on the Bernstein design matrix with
/// tau_i = (t_i - t_0) / (t_N - t_0).
BezierFit fit_bezier(const SampledTrack& track, int degree);

/// Mean from fit_bezier; isotropic control-point covariances c_i I chosen by
/// nonnegative least squares on the relative error between the marginal
/// variance and (sigma0 + (sigma1 - sigma0) t / T)^2 over a 128-point grid.
ProbBezierCurve fit_prob_bezier(const SampledTrack& track, int degree, double sigma0,
                                double sigma1);

/// Lower bound applied to every fitted control-point variance, m^2.
inline constexpr double kMinControlVariance = 1e-10;
/// Grid used when matching the variance schedule.
inline constexpr int kVarianceGridSize = 128;

}  // namespace glr
