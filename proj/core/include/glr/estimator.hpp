#pragma once

#include <span>
#include <vector>

#include "glr/geometry.hpp"
#include "glr/probability.hpp"
#include "glr/quadrature.hpp"
#include "glr/trajectory.hpp"

namespace glr {

/// GLR hyperparameters. Defaults: 12x12 spatial cubature, 24-node temporal
/// quadrature, 6 s horizon, 5.2 m x 2.0 m vehicles.
struct GlrConfig {
  int n1 = 12;
  int n2 = 24;
  double horizon = 6.0;
  double car_length = 5.2;
  double car_width = 2.0;
  /// Instantaneous probabilities at or above this saturate the estimate.
  double pcol_clip = 1.0 - 1e-9;

  /// Throws InvalidArgument on any violated invariant.
  void validate() const;
};

/// Full output of one estimate: the total plus the per-node curves.
struct RiskBreakdown {
  double total_probability = 0.0;
  double hazard_integral = 0.0;
  std::vector<double> node_times;
  std::vector<double> node_pcol;
  std::vector<double> node_hazard;
  bool saturated = false;
  /// Number of Stage-1 (spatial) evaluations performed.
  int stage1_evaluations = 0;
};

/// Vehicle footprint at `position` with `heading_rad`, sized from `config`.
OrientedRect vehicle_rect(const Vec2& position, double heading_rad, const GlrConfig& config);

/// Ego footprint at time t along the planned curve.
OrientedRect ego_rect_at(const BezierCurve& ego, double t, const GlrConfig& config);

/// Five-point instantaneous collision probability: the target marginal is
/// replicated at the target rect's four corners and centroid, each copy is
/// integrated over the ego rect, and 1 - prod(1 - m_k) is returned.
double instantaneous_pcol(const OrientedRect& ego_rect, const Gaussian2& target_marginal,
                          double target_heading, const GlrConfig& config, const QuadRule& rule1);

/// instantaneous_pcol with ego pose, target marginal and headings taken at t.
double instantaneous_pcol_at(const BezierCurve& ego, const ProbBezierCurve& target, double t,
                             const GlrConfig& config);

/// Log-odds hazard p / (1 - p) with p clipped to [0, clip].
double hazard(double pcol, double clip);
inline bool saturates(double pcol, double clip) { return pcol >= clip; }

/// Times t_i in [0, horizon] of the order-n Gauss-Legendre nodes.
std::vector<double> stage2_times(const GlrConfig& config);

/// Stage 2: hazards at the node times, weighted GLQ sum, and
/// 1 - exp(-integral). Any saturated node forces the total to 1.
RiskBreakdown integrate_hazard(std::vector<double> node_times, std::vector<double> node_pcol,
                               const GlrConfig& config);

/// Single-opponent GLR estimate.
RiskBreakdown estimate(const BezierCurve& ego, const ProbBezierCurve& target,
                       const GlrConfig& config);

/// Multi-opponent estimate: per-node hazards are summed over opponents.
/// node_pcol holds the probability implied by the summed hazard.
RiskBreakdown estimate_multi(const BezierCurve& ego, std::span<const ProbBezierCurve> targets,
                             const GlrConfig& config);

}  // namespace glr
