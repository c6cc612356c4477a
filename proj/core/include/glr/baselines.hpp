#pragma once

#include <cmath>
#include <vector>

#include "glr/estimator.hpp"
#include "glr/rng.hpp"
#include "glr/trajectory.hpp"

namespace glr {

/// Knobs for the comparison estimators. Values other than the grid size and
/// QMLGL sample count are reconstructions, exposed for sensitivity runs.
struct BaselineConfig {
  /// Uniform grid t_k = k T / time_steps, k = 0..time_steps-1.
  int time_steps = 128;
  /// Per-step discount of the discounted Boole bound.
  double discount = 0.95;
  /// Particles per grid time for VS-PF.
  int particles = 500;
  /// Coherent trajectories drawn by QMLGL.
  int qmlgl_samples = 2000;
  /// Bounding-circle radius; default is the half-diagonal of a 5.2 m x 2.0 m car.
  double circle_radius = std::hypot(2.6, 1.0);
  /// Scale each VS-PF term by the fraction of the collision region crossed
  /// during one grid step (relative speed x dt / region extent, capped at 1).
  bool vspf_velocity_scaling = true;
  /// Per-step probability summed by the discounted Boole bound: the
  /// five-point rectangle Pcol (true) or the bounding-circle overlap (false).
  bool dbiub_rect_pcol = false;

  void validate() const;
};

/// Half-diagonal of the vehicle rectangle: the smallest enclosing circle.
double bounding_circle_radius(const GlrConfig& config);

std::vector<double> uniform_grid(double horizon, int steps);

/// Probability that the target centroid lands within 2 r of the ego centre at t.
double circle_overlap_probability(const BezierCurve& ego, const ProbBezierCurve& target, double t,
                                  const BaselineConfig& cfg);

/// Maximum over the grid of the circle-overlap probability.
double max_circle(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
                  const BaselineConfig& cfg);

/// Maximum over the grid of pdf(ego position) * pi r^2, clipped to [0, 1].
double risk_density(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
                    const BaselineConfig& cfg);

/// min(1, sum_k discount^k * P(t_k)), P per BaselineConfig::dbiub_rect_pcol.
double discounted_biub(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
                       const BaselineConfig& cfg);

/// Per-step particle collision fractions against the Minkowski-inflated ego
/// rect at every grid time.
std::vector<double> vs_pf_fractions(const BezierCurve& ego, const ProbBezierCurve& target,
                                    const GlrConfig& glr, const BaselineConfig& cfg, Rng& rng);

/// Velocity-scaled particle filter: Boole-style sum of the particle
/// collision fractions, capped at 1.
double vs_pf(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
             const BaselineConfig& cfg, Rng& rng);

/// 1 - prod_k (1 - Pcol(t_k)) with the five-point Pcol on the uniform grid.
double mutual_independence(const BezierCurve& ego, const ProbBezierCurve& target,
                           const GlrConfig& glr, const BaselineConfig& cfg);

/// Monte Carlo Pcol at the Stage-2 nodes from coherent trajectory samples,
/// then the same hazard integration as GLR.
RiskBreakdown qmlgl(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
                    const BaselineConfig& cfg, Rng& rng);

}  // namespace glr
