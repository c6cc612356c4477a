#pragma once

#include <cstdint>
#include <vector>

#include "glr/estimator.hpp"
#include "glr/trajectory.hpp"

namespace glr {

struct OracleConfig {
  int sample_count = 2000;
  int time_steps = 128;
  std::uint64_t seed = 0x5eed;

  void validate() const;
};

struct OracleResult {
  double probability = 0.0;
  int colliding_count = 0;
  int sample_count = 0;
  double binomial_std_error = 0.0;
  /// first_collision_times[k] counts samples whose first overlap is at grid step k.
  std::vector<int> first_collision_times;
};

/// Dense Monte Carlo ground truth. Sample i uses its own engine seeded from
/// (seed, i), so the result does not depend on evaluation order. A sample
/// collides if its rectangle (own hodograph heading) overlaps the ego
/// rectangle at any grid time k T / time_steps.
OracleResult ground_truth(const BezierCurve& ego, const ProbBezierCurve& target,
                          const GlrConfig& glr, const OracleConfig& cfg);

/// Index of the first grid step at which `sample` overlaps `ego_rects`, or -1.
int first_collision_step(const std::vector<OrientedRect>& ego_rects,
                         const std::vector<double>& times, const BezierCurve& sample,
                         const GlrConfig& glr);

}  // namespace glr
