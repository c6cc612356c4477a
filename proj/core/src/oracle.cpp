#include "glr/oracle.hpp"

#include <cmath>

#include "glr/baselines.hpp"
#include "glr/errors.hpp"
#include "glr/rng.hpp"

namespace glr {

void OracleConfig::validate() const {
  if (sample_count < 1 || time_steps < 1) {
    throw InvalidArgument("OracleConfig: counts must be positive");
  }
}

int first_collision_step(const std::vector<OrientedRect>& ego_rects,
                         const std::vector<double>& times, const BezierCurve& sample,
                         const GlrConfig& glr) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    const OrientedRect rect = vehicle_rect(sample.evaluate(times[k]), heading(sample, times[k]), glr);
    if (rects_intersect(ego_rects[k], rect)) {
      return static_cast<int>(k);
    }
  }
  return -1;
}

OracleResult ground_truth(const BezierCurve& ego, const ProbBezierCurve& target,
                          const GlrConfig& glr, const OracleConfig& cfg) {
  cfg.validate();
  glr.validate();
  const std::vector<double> times = uniform_grid(glr.horizon, cfg.time_steps);
  std::vector<OrientedRect> ego_rects;
  ego_rects.reserve(times.size());
  for (const double t : times) {
    ego_rects.push_back(ego_rect_at(ego, t, glr));
  }

  OracleResult out;
  out.sample_count = cfg.sample_count;
  out.first_collision_times.assign(static_cast<std::size_t>(cfg.time_steps), 0);
  for (int i = 0; i < cfg.sample_count; ++i) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const BezierCurve sample = sample_trajectory(target, rng);
    const int step = first_collision_step(ego_rects, times, sample, glr);
    if (step >= 0) {
      ++out.colliding_count;
      ++out.first_collision_times[static_cast<std::size_t>(step)];
    }
  }
  const double n = static_cast<double>(out.sample_count);
  out.probability = out.colliding_count / n;
  out.binomial_std_error = std::sqrt(out.probability * (1.0 - out.probability) / n);
  return out;
}

}  // namespace glr
