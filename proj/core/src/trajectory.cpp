#include "glr/trajectory.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <string>

#include "glr/errors.hpp"
#include "glr/nnls.hpp"

namespace glr {

std::vector<double> bernstein_basis(int degree, double tau) {
  std::vector<double> b(static_cast<std::size_t>(degree) + 1, 0.0);
  b[0] = 1.0;
  const double u = 1.0 - tau;
  for (int k = 1; k <= degree; ++k) {
    for (int i = k; i >= 1; --i) {
      b[i] = u * b[i] + tau * b[i - 1];
    }
    b[0] *= u;
  }
  return b;
}

namespace {

// Normalised curve parameter; tolerates rounding just past either end.
double curve_param(double t, double horizon) {
  const double slack = 1e-9 * horizon;
  if (!(t >= -slack && t <= horizon + slack)) {
    throw DomainError("Bezier evaluation at t=" + std::to_string(t) + " outside [0, " +
                      std::to_string(horizon) + "]");
  }
  return std::clamp(t / horizon, 0.0, 1.0);
}

void check_psd(const Mat2& m, std::size_t index) {
  const double scale = std::max(std::abs(m(0, 0)), std::abs(m(1, 1)));
  if (std::abs(m(0, 1) - m(1, 0)) > 1e-12 * std::max(scale, 1e-300) ||
      m(0, 0) < 0.0 || m(1, 1) < 0.0 ||
      m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) < -1e-12 * scale * scale) {
    throw InvalidDistribution("ProbBezierCurve: control covariance " + std::to_string(index) +
                              " is not symmetric positive semidefinite");
  }
}

}  // namespace

BezierCurve::BezierCurve(std::vector<Vec2> control_points, double horizon)
    : control_points_(std::move(control_points)), horizon_(horizon) {
  if (control_points_.size() < 2) {
    throw InvalidArgument("BezierCurve: degree must be at least 1");
  }
  if (!(horizon_ > 0.0)) {
    throw InvalidArgument("BezierCurve: horizon must be positive");
  }
}

Vec2 BezierCurve::evaluate(double t) const {
  const double tau = curve_param(t, horizon_);
  const auto b = bernstein_basis(degree(), tau);
  Vec2 p = Vec2::Zero();
  for (std::size_t i = 0; i < b.size(); ++i) {
    p += b[i] * control_points_[i];
  }
  return p;
}

Vec2 BezierCurve::velocity(double t) const {
  const double tau = curve_param(t, horizon_);
  const int d = degree();
  const auto b = bernstein_basis(d - 1, tau);
  Vec2 v = Vec2::Zero();
  for (int i = 0; i < d; ++i) {
    v += b[i] * (control_points_[i + 1] - control_points_[i]);
  }
  return (static_cast<double>(d) / horizon_) * v;
}

double heading(const BezierCurve& curve, double t) {
  Vec2 v = curve.velocity(t);
  if (v.norm() >= kMinHeadingSpeed) {
    return std::atan2(v.y(), v.x());
  }
  // Walk back on a fine grid to the nearest earlier usable tangent.
  const double step = curve.horizon() / 1024.0;
  for (double s = std::min(t, curve.horizon()) - step; s >= 0.0; s -= step) {
    v = curve.velocity(s);
    if (v.norm() >= kMinHeadingSpeed) {
      return std::atan2(v.y(), v.x());
    }
  }
  return 0.0;
}

ProbBezierCurve::ProbBezierCurve(std::vector<Vec2> mean_points, std::vector<Mat2> point_covs,
                                 double horizon)
    : mean_points_(std::move(mean_points)),
      point_covs_(std::move(point_covs)),
      horizon_(horizon),
      mean_curve_(mean_points_, horizon) {
  if (mean_points_.size() != point_covs_.size()) {
    throw InvalidArgument("ProbBezierCurve: need one covariance per control point");
  }
  for (std::size_t i = 0; i < point_covs_.size(); ++i) {
    check_psd(point_covs_[i], i);
  }
}

Gaussian2 marginal_at(const ProbBezierCurve& pbc, double t) {
  const double tau = curve_param(t, pbc.horizon());
  const auto b = bernstein_basis(pbc.degree(), tau);
  Vec2 mean = Vec2::Zero();
  Mat2 cov = Mat2::Zero();
  for (std::size_t i = 0; i < b.size(); ++i) {
    mean += b[i] * pbc.mean_points()[i];
    cov += (b[i] * b[i]) * pbc.point_covs()[i];
  }
  return Gaussian2(mean, cov);
}

BezierCurve sample_trajectory(const ProbBezierCurve& pbc, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vec2> points;
  points.reserve(pbc.mean_points().size());
  for (std::size_t i = 0; i < pbc.mean_points().size(); ++i) {
    const Mat2& c = pbc.point_covs()[i];
    // Lower Cholesky factor of a PSD 2x2 matrix.
    const double l11 = std::sqrt(std::max(0.0, c(0, 0)));
    const double l21 = l11 > 0.0 ? c(1, 0) / l11 : 0.0;
    const double l22 = std::sqrt(std::max(0.0, c(1, 1) - l21 * l21));
    const double z1 = normal(rng);
    const double z2 = normal(rng);
    const Vec2& m = pbc.mean_points()[i];
    points.emplace_back(m.x() + l11 * z1, m.y() + l21 * z1 + l22 * z2);
  }
  return BezierCurve(std::move(points), pbc.horizon());
}

void SampledTrack::validate() const {
  if (timestamps.size() != positions.size()) {
    throw ValidationError("track: " + std::to_string(timestamps.size()) + " timestamps but " +
                          std::to_string(positions.size()) + " positions");
  }
  if (timestamps.size() < 2) {
    throw ValidationError("track: need at least 2 samples");
  }
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (!std::isfinite(timestamps[i]) || !positions[i].allFinite()) {
      throw ValidationError("track: non-finite sample at index " + std::to_string(i));
    }
    if (i > 0 && !(timestamps[i] > timestamps[i - 1])) {
      throw ValidationError("track: timestamps not strictly increasing at index " +
                            std::to_string(i));
    }
  }
}

BezierFit fit_bezier(const SampledTrack& track, int degree) {
  if (degree < 1) {
    throw FitError("fit_bezier: degree must be at least 1");
  }
  const std::size_t n = track.timestamps.size();
  if (n != track.positions.size()) {
    throw FitError("fit_bezier: timestamps and positions differ in length");
  }
  if (n < static_cast<std::size_t>(degree) + 1) {
    throw FitError("fit_bezier: " + std::to_string(n) + " samples cannot determine degree " +
                   std::to_string(degree));
  }
  const double t0 = track.timestamps.front();
  const double span = track.timestamps.back() - t0;
  if (!(span > 0.0)) {
    throw FitError("fit_bezier: rank-deficient design (zero time span)");
  }

  const Vec2 first = track.positions.front();
  const Vec2 last = track.positions.back();
  std::vector<Vec2> controls(static_cast<std::size_t>(degree) + 1, Vec2::Zero());
  controls.front() = first;
  controls.back() = last;

  const int interior = degree - 1;
  if (interior > 0) {
    Eigen::MatrixXd design(static_cast<Eigen::Index>(n), interior);
    Eigen::MatrixXd rhs(static_cast<Eigen::Index>(n), 2);
    for (std::size_t i = 0; i < n; ++i) {
      const double tau = (track.timestamps[i] - t0) / span;
      const auto b = bernstein_basis(degree, tau);
      const auto row = static_cast<Eigen::Index>(i);
      for (int j = 0; j < interior; ++j) {
        design(row, j) = b[j + 1];
      }
      const Vec2 r = track.positions[i] - b.front() * first - b.back() * last;
      rhs(row, 0) = r.x();
      rhs(row, 1) = r.y();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < interior) {
      throw FitError("fit_bezier: rank-deficient design (rank " + std::to_string(qr.rank()) +
                     " < " + std::to_string(interior) + "); duplicate timestamps?");
    }
    const Eigen::MatrixXd sol = qr.solve(rhs);
    for (int j = 0; j < interior; ++j) {
      controls[static_cast<std::size_t>(j) + 1] = Vec2(sol(j, 0), sol(j, 1));
    }
  }

  BezierCurve curve(std::move(controls), span);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sq += (curve.evaluate(track.timestamps[i] - t0) - track.positions[i]).squaredNorm();
  }
  return {std::move(curve), std::sqrt(sq / static_cast<double>(n))};
}

ProbBezierCurve fit_prob_bezier(const SampledTrack& track, int degree, double sigma0,
                                double sigma1) {
  if (!(sigma0 > 0.0) || !(sigma1 >= sigma0)) {
    throw FitError("fit_prob_bezier: require 0 < sigma0 <= sigma1");
  }
  BezierFit fit = fit_bezier(track, degree);

  Eigen::MatrixXd a(kVarianceGridSize, degree + 1);
  Eigen::VectorXd target(kVarianceGridSize);
  for (int g = 0; g < kVarianceGridSize; ++g) {
    const double tau = static_cast<double>(g) / (kVarianceGridSize - 1);
    const auto b = bernstein_basis(degree, tau);
    const double s = sigma0 + (sigma1 - sigma0) * tau;
    // Rows scaled by 1 / s^2: the fit is on relative variance error, which
    // is what a KL divergence between isotropic Gaussians measures.
    for (int i = 0; i <= degree; ++i) {
      a(g, i) = b[i] * b[i] / (s * s);
    }
    target(g) = 1.0;
  }
  const Eigen::VectorXd c = nnls(a, target);

  std::vector<Mat2> covs;
  covs.reserve(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i <= degree; ++i) {
    covs.push_back(std::max(c(i), kMinControlVariance) * Mat2::Identity());
  }
  const double horizon = fit.curve.horizon();
  return ProbBezierCurve(fit.curve.control_points(), std::move(covs), horizon);
}

}  // namespace glr
