#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "glr/bench.hpp"
#include "glr/trajectory.hpp"

namespace testutil {

inline constexpr double kHorizon = 6.0;

// Samples p(t) at 100 Hz over the horizon.
template <typename F>
glr::SampledTrack track_of(F&& path, double horizon = kHorizon) {
  glr::SampledTrack tr;
  const int n = static_cast<int>(std::lround(horizon * 100.0));
  for (int i = 0; i <= n; ++i) {
    const double t = horizon * i / n;
    tr.timestamps.push_back(t);
    tr.positions.push_back(path(t));
  }
  return tr;
}

inline glr::BezierCurve line(const glr::Vec2& start, const glr::Vec2& velocity,
                             double horizon = kHorizon) {
  return glr::fit_bezier(track_of([&](double t) { return glr::Vec2(start + velocity * t); },
                                  horizon),
                         7)
      .curve;
}

inline glr::ProbBezierCurve prob_line(const glr::Vec2& start, const glr::Vec2& velocity,
                                      double sigma0 = 0.1, double sigma1 = 1.0,
                                      double horizon = kHorizon) {
  return glr::fit_prob_bezier(
      track_of([&](double t) { return glr::Vec2(start + velocity * t); }, horizon), 7, sigma0,
      sigma1);
}

// Every control point and covariance moved by the rigid map x -> R x + s.
inline glr::BezierCurve moved(const glr::BezierCurve& c, double theta, const glr::Vec2& s) {
  const glr::Mat2 r = glr::rotation(theta);
  std::vector<glr::Vec2> pts;
  for (const auto& p : c.control_points()) pts.push_back(r * p + s);
  return glr::BezierCurve(pts, c.horizon());
}

inline glr::ProbBezierCurve moved(const glr::ProbBezierCurve& c, double theta,
                                  const glr::Vec2& s) {
  const glr::Mat2 r = glr::rotation(theta);
  std::vector<glr::Vec2> pts;
  std::vector<glr::Mat2> covs;
  for (const auto& p : c.mean_points()) pts.push_back(r * p + s);
  for (const auto& m : c.point_covs()) covs.push_back(r * m * r.transpose());
  return glr::ProbBezierCurve(pts, covs, c.horizon());
}

// A small mixed batch drawn from the synthetic families.
inline std::vector<glr::FittedScenario> fitted_batch(int per_family, std::uint64_t seed) {
  std::vector<glr::FittedScenario> out;
  for (const auto family : {glr::ScenarioFamily::kStraightOvertake,
                            glr::ScenarioFamily::kLaneChangeCut,
                            glr::ScenarioFamily::kArcOvertake}) {
    glr::GeneratorSpec spec;
    spec.family = family;
    spec.count = per_family;
    spec.seed = seed;
    for (const auto& s : glr::generate(spec)) out.push_back(glr::fit_scenario(s, glr::FitConfig{}));
  }
  return out;
}

}  // namespace testutil
