#include "glr/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "glr/errors.hpp"

namespace glr {

void GlrConfig::validate() const {
  if (n1 < 1 || n1 > kMaxQuadOrder || n2 < 1 || n2 > kMaxQuadOrder) {
    throw InvalidArgument("GlrConfig: quadrature orders must be in [1, 256]");
  }
  if (!(horizon > 0.0)) {
    throw InvalidArgument("GlrConfig: horizon must be positive");
  }
  if (!(car_length > 0.0) || !(car_width > 0.0)) {
    throw InvalidArgument("GlrConfig: car dimensions must be positive");
  }
  if (!(pcol_clip > 0.0 && pcol_clip < 1.0)) {
    throw InvalidArgument("GlrConfig: pcol_clip must lie in (0, 1)");
  }
}

OrientedRect vehicle_rect(const Vec2& position, double heading_rad, const GlrConfig& config) {
  return OrientedRect(Pose2(position, heading_rad), config.car_length, config.car_width);
}

OrientedRect ego_rect_at(const BezierCurve& ego, double t, const GlrConfig& config) {
  return vehicle_rect(ego.evaluate(t), heading(ego, t), config);
}

double instantaneous_pcol(const OrientedRect& ego_rect, const Gaussian2& target_marginal,
                          double target_heading, const GlrConfig& config, const QuadRule& rule1) {
  const OrientedRect target_rect = vehicle_rect(target_marginal.mean(), target_heading, config);
  const auto corners = rect_corners(target_rect);
  double no_collision = 1.0;
  for (const Vec2& corner : corners) {
    no_collision *= 1.0 - integral_over_rect(target_marginal.with_mean(corner), ego_rect, rule1);
  }
  no_collision *= 1.0 - integral_over_rect(target_marginal, ego_rect, rule1);
  return std::clamp(1.0 - no_collision, 0.0, 1.0);
}

double instantaneous_pcol_at(const BezierCurve& ego, const ProbBezierCurve& target, double t,
                             const GlrConfig& config) {
  return instantaneous_pcol(ego_rect_at(ego, t, config), marginal_at(target, t),
                            heading(target.mean_curve(), t), config,
                            gauss_legendre_rule(config.n1));
}

double hazard(double pcol, double clip) {
  const double p = std::clamp(pcol, 0.0, clip);
  return p / (1.0 - p);
}

std::vector<double> stage2_times(const GlrConfig& config) {
  const QuadRule& rule2 = gauss_legendre_rule(config.n2);
  const Interval span(0.0, config.horizon);
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(rule2.order()));
  for (const double xi : rule2.nodes()) {
    times.push_back(span.map(xi));
  }
  return times;
}

namespace {

void check_horizon(double curve_horizon, const GlrConfig& config, const char* what) {
  if (curve_horizon < config.horizon * (1.0 - 1e-12)) {
    throw InvalidArgument(std::string(what) + " horizon is shorter than the estimation horizon");
  }
}

std::vector<double> node_pcols(const BezierCurve& ego, const ProbBezierCurve& target,
                               std::span<const double> times, const GlrConfig& config) {
  const QuadRule& rule1 = gauss_legendre_rule(config.n1);
  std::vector<double> pcol;
  pcol.reserve(times.size());
  for (const double t : times) {
    pcol.push_back(instantaneous_pcol(ego_rect_at(ego, t, config), marginal_at(target, t),
                                      heading(target.mean_curve(), t), config, rule1));
  }
  return pcol;
}

// Weighted GLQ sum in fixed node order, then the zero-event complement.
void finish(RiskBreakdown& out, const GlrConfig& config) {
  const QuadRule& rule2 = gauss_legendre_rule(config.n2);
  double sum = 0.0;
  for (std::size_t i = 0; i < out.node_hazard.size(); ++i) {
    sum += rule2.weights()[i] * out.node_hazard[i];
  }
  out.hazard_integral = 0.5 * config.horizon * sum;
  out.total_probability = out.saturated ? 1.0 : -std::expm1(-out.hazard_integral);
}

}  // namespace

RiskBreakdown integrate_hazard(std::vector<double> node_times, std::vector<double> node_pcol,
                               const GlrConfig& config) {
  if (node_times.size() != static_cast<std::size_t>(config.n2) ||
      node_pcol.size() != node_times.size()) {
    throw InvalidArgument("integrate_hazard: expected one probability per Stage-2 node");
  }
  RiskBreakdown out;
  out.node_times = std::move(node_times);
  out.node_pcol = std::move(node_pcol);
  out.node_hazard.reserve(out.node_pcol.size());
  for (const double p : out.node_pcol) {
    out.saturated = out.saturated || saturates(p, config.pcol_clip);
    out.node_hazard.push_back(hazard(p, config.pcol_clip));
  }
  finish(out, config);
  return out;
}

RiskBreakdown estimate(const BezierCurve& ego, const ProbBezierCurve& target,
                       const GlrConfig& config) {
  config.validate();
  check_horizon(ego.horizon(), config, "ego");
  check_horizon(target.horizon(), config, "target");
  std::vector<double> times = stage2_times(config);
  std::vector<double> pcol = node_pcols(ego, target, times, config);
  RiskBreakdown out = integrate_hazard(std::move(times), std::move(pcol), config);
  out.stage1_evaluations = config.n2;
  return out;
}

RiskBreakdown estimate_multi(const BezierCurve& ego, std::span<const ProbBezierCurve> targets,
                             const GlrConfig& config) {
  config.validate();
  if (targets.empty()) {
    throw InvalidArgument("estimate_multi: at least one target is required");
  }
  check_horizon(ego.horizon(), config, "ego");
  RiskBreakdown out;
  out.node_times = stage2_times(config);
  out.node_hazard.assign(out.node_times.size(), 0.0);
  for (const ProbBezierCurve& target : targets) {
    check_horizon(target.horizon(), config, "target");
    const std::vector<double> pcol = node_pcols(ego, target, out.node_times, config);
    for (std::size_t i = 0; i < pcol.size(); ++i) {
      out.saturated = out.saturated || saturates(pcol[i], config.pcol_clip);
      out.node_hazard[i] += hazard(pcol[i], config.pcol_clip);
    }
    out.stage1_evaluations += config.n2;
  }
  out.node_pcol.reserve(out.node_hazard.size());
  for (const double h : out.node_hazard) {
    out.node_pcol.push_back(h / (1.0 + h));
  }
  finish(out, config);
  return out;
}

}  // namespace glr
