#include "glr/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "glr/errors.hpp"

namespace glr {

void BaselineConfig::validate() const {
  if (time_steps < 1 || particles < 1 || qmlgl_samples < 1) {
    throw InvalidArgument("BaselineConfig: counts must be positive");
  }
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw InvalidArgument("BaselineConfig: discount must lie in (0, 1]");
  }
  if (!(circle_radius > 0.0)) {
    throw InvalidArgument("BaselineConfig: circle_radius must be positive");
  }
}

double bounding_circle_radius(const GlrConfig& config) {
  return std::hypot(0.5 * config.car_length, 0.5 * config.car_width);
}

std::vector<double> uniform_grid(double horizon, int steps) {
  std::vector<double> times(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    times[static_cast<std::size_t>(k)] = horizon * static_cast<double>(k) / steps;
  }
  return times;
}

double circle_overlap_probability(const BezierCurve& ego, const ProbBezierCurve& target, double t,
                                  const BaselineConfig& cfg) {
  return integral_over_disk(marginal_at(target, t), ego.evaluate(t), 2.0 * cfg.circle_radius);
}

double max_circle(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
                  const BaselineConfig& cfg) {
  cfg.validate();
  double worst = 0.0;
  for (const double t : uniform_grid(glr.horizon, cfg.time_steps)) {
    worst = std::max(worst, circle_overlap_probability(ego, target, t, cfg));
  }
  return worst;
}

double risk_density(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
                    const BaselineConfig& cfg) {
  cfg.validate();
  const double area = std::numbers::pi * cfg.circle_radius * cfg.circle_radius;
  double worst = 0.0;
  for (const double t : uniform_grid(glr.horizon, cfg.time_steps)) {
    const double rho = marginal_at(target, t).pdf(ego.evaluate(t)) * area;
    worst = std::max(worst, std::clamp(rho, 0.0, 1.0));
  }
  return worst;
}

double discounted_biub(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
                       const BaselineConfig& cfg) {
  cfg.validate();
  double sum = 0.0;
  double weight = 1.0;
  for (const double t : uniform_grid(glr.horizon, cfg.time_steps)) {
    sum += weight * (cfg.dbiub_rect_pcol ? instantaneous_pcol_at(ego, target, t, glr)
                                         : circle_overlap_probability(ego, target, t, cfg));
    weight *= cfg.discount;
  }
  return std::min(1.0, sum);
}

std::vector<double> vs_pf_fractions(const BezierCurve& ego, const ProbBezierCurve& target,
                                    const GlrConfig& glr, const BaselineConfig& cfg, Rng& rng) {
  cfg.validate();
  // Target rect shrunk to its centre point, ego rect grown by the target's
  // half-dimensions on every side.
  const double half_len = 0.5 * glr.car_length + 0.5 * glr.car_length;
  const double half_wid = 0.5 * glr.car_width + 0.5 * glr.car_width;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> fractions;
  fractions.reserve(static_cast<std::size_t>(cfg.time_steps));
  for (const double t : uniform_grid(glr.horizon, cfg.time_steps)) {
    const Gaussian2 marginal = marginal_at(target, t);
    const Mat2& c = marginal.cov();
    const double l11 = std::sqrt(c(0, 0));
    const double l21 = c(1, 0) / l11;
    const double l22 = std::sqrt(std::max(0.0, c(1, 1) - l21 * l21));
    const Pose2 ego_pose(ego.evaluate(t), heading(ego, t));
    int hits = 0;
    for (int p = 0; p < cfg.particles; ++p) {
      const double z1 = normal(rng);
      const double z2 = normal(rng);
      const Vec2 particle(marginal.mean().x() + l11 * z1,
                          marginal.mean().y() + l21 * z1 + l22 * z2);
      const Vec2 q = ego_pose.to_local(particle);
      if (std::abs(q.x()) <= half_len && std::abs(q.y()) <= half_wid) {
        ++hits;
      }
    }
    fractions.push_back(static_cast<double>(hits) / cfg.particles);
  }
  return fractions;
}

double vs_pf(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
             const BaselineConfig& cfg, Rng& rng) {
  const std::vector<double> fractions = vs_pf_fractions(ego, target, glr, cfg, rng);
  const std::vector<double> times = uniform_grid(glr.horizon, cfg.time_steps);
  const double dt = glr.horizon / cfg.time_steps;
  double sum = 0.0;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    double scale = 1.0;
    if (cfg.vspf_velocity_scaling) {
      const double t = times[k];
      const Vec2 rel = target.mean_curve().velocity(t) - ego.velocity(t);
      const double speed = rel.norm();
      if (speed > 0.0) {
        // Chord of the inflated region through its centre along the relative velocity.
        const Vec2 dir = rotation(heading(ego, t)).transpose() * (rel / speed);
        const double ax = std::abs(dir.x()) > 0.0 ? glr.car_length / std::abs(dir.x())
                                                  : std::numeric_limits<double>::infinity();
        const double ay = std::abs(dir.y()) > 0.0 ? glr.car_width / std::abs(dir.y())
                                                  : std::numeric_limits<double>::infinity();
        const double chord = 2.0 * std::min(ax, ay);
        scale = std::min(1.0, speed * dt / chord);
      } else {
        scale = 0.0;
      }
    }
    sum += scale * fractions[k];
  }
  return std::min(1.0, sum);
}

double mutual_independence(const BezierCurve& ego, const ProbBezierCurve& target,
                           const GlrConfig& glr, const BaselineConfig& cfg) {
  cfg.validate();
  double survive = 1.0;
  for (const double t : uniform_grid(glr.horizon, cfg.time_steps)) {
    survive *= 1.0 - instantaneous_pcol_at(ego, target, t, glr);
  }
  return std::clamp(1.0 - survive, 0.0, 1.0);
}

RiskBreakdown qmlgl(const BezierCurve& ego, const ProbBezierCurve& target, const GlrConfig& glr,
                    const BaselineConfig& cfg, Rng& rng) {
  cfg.validate();
  glr.validate();
  std::vector<double> times = stage2_times(glr);
  std::vector<OrientedRect> ego_rects;
  ego_rects.reserve(times.size());
  for (const double t : times) {
    ego_rects.push_back(ego_rect_at(ego, t, glr));
  }
  std::vector<int> hits(times.size(), 0);
  for (int s = 0; s < cfg.qmlgl_samples; ++s) {
    const BezierCurve sample = sample_trajectory(target, rng);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const OrientedRect rect =
          vehicle_rect(sample.evaluate(times[i]), heading(sample, times[i]), glr);
      if (rects_intersect(ego_rects[i], rect)) {
        ++hits[i];
      }
    }
  }
  std::vector<double> pcol;
  pcol.reserve(hits.size());
  for (const int h : hits) {
    pcol.push_back(static_cast<double>(h) / cfg.qmlgl_samples);
  }
  RiskBreakdown out = integrate_hazard(std::move(times), std::move(pcol), glr);
  out.stage1_evaluations = glr.n2;
  return out;
}

}  // namespace glr
