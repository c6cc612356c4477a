#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "glr/errors.hpp"
#include "glr/probability.hpp"
#include "oracles.hpp"

using doctest::Approx;
using glr::Gaussian2;
using glr::Mat2;
using glr::OrientedRect;
using glr::Pose2;
using glr::Vec2;

namespace {

constexpr double kPi = std::numbers::pi;

Mat2 diag(double a, double b) {
  Mat2 m;
  m << a, 0.0, 0.0, b;
  return m;
}

}  // namespace

TEST_CASE("pdf closed forms") {
  const Gaussian2 std_normal(Vec2::Zero(), Mat2::Identity());
  CHECK(glr::pdf(std_normal, Vec2::Zero()) == Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
  CHECK(glr::pdf(std_normal, Vec2(3, 4)) == Approx(std::exp(-12.5) / (2.0 * kPi)).epsilon(1e-14));
  const Gaussian2 wide(Vec2::Zero(), diag(4.0, 1.0));
  CHECK(glr::pdf(wide, Vec2(2, 0)) == Approx(std::exp(-0.5) / (4.0 * kPi)).epsilon(1e-14));
  CHECK(wide.mahalanobis2(Vec2(2, 0)) == Approx(1.0));
}

TEST_CASE("invalid covariances are rejected") {
  Mat2 asym;
  asym << 1.0, 0.2, 0.1, 1.0;
  CHECK_THROWS_AS(Gaussian2(Vec2::Zero(), asym), glr::InvalidDistribution);
  CHECK_THROWS_AS(Gaussian2(Vec2::Zero(), diag(1.0, 0.0)), glr::InvalidDistribution);
  CHECK_THROWS_AS(Gaussian2(Vec2::Zero(), diag(1.0, -1.0)), glr::InvalidDistribution);
  Mat2 singular;
  singular << 1.0, 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(Gaussian2(Vec2::Zero(), singular), glr::InvalidDistribution);
  CHECK_THROWS_AS(Gaussian2(Vec2(std::nan(""), 0.0), Mat2::Identity()), glr::InvalidDistribution);
}

TEST_CASE("transformed and with_mean") {
  Mat2 cov;
  cov << 2.0, 0.3, 0.3, 0.5;
  const Gaussian2 g(Vec2(1, -1), cov);
  const Mat2 r = glr::rotation(0.7);
  const Gaussian2 h = g.transformed(r, Vec2(5, 6));
  CHECK((h.mean() - (r * Vec2(1, -1) + Vec2(5, 6))).norm() < 1e-14);
  CHECK((h.cov() - r * cov * r.transpose()).norm() < 1e-14);
  const Vec2 p(0.4, 0.9);
  CHECK(h.pdf(r * p + Vec2(5, 6)) == Approx(g.pdf(p)).epsilon(1e-13));
  CHECK(g.with_mean(Vec2(3, 3)).pdf(Vec2(3, 3)) == Approx(g.normalizer()).epsilon(1e-15));
}

TEST_CASE("integral_over_rect examples") {
  const auto& r12 = glr::gauss_legendre_rule(12);
  const OrientedRect car(Pose2(Vec2::Zero(), 0.0), 5.2, 2.0);
  CHECK(glr::integral_over_rect(Gaussian2(Vec2(50, 0), Mat2::Identity()), car, r12) < 1e-12);

  const OrientedRect unit(Pose2(Vec2::Zero(), 0.0), 2.0, 2.0);
  const double e = std::erf(1.0 / std::sqrt(2.0));
  CHECK(std::abs(glr::integral_over_rect(Gaussian2(Vec2::Zero(), Mat2::Identity()), unit, r12) -
                 e * e) < 1e-9);
}

TEST_CASE("property: axis-aligned rectangles match the erf product") {
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto& r12 = glr::gauss_legendre_rule(12);
  for (int i = 0; i < 300; ++i) {
    const Vec2 mean(10.0 * u(eng) - 5.0, 10.0 * u(eng) - 5.0);
    const double sx = 0.3 + 1.7 * u(eng);
    const double sy = 0.3 + 1.7 * u(eng);
    const double x0 = mean.x() - 3 * sx + 2.9 * sx * u(eng);
    const double x1 = mean.x() + 3 * sx - 2.9 * sx * u(eng);
    const double y0 = mean.y() - 3 * sy + 2.9 * sy * u(eng);
    const double y1 = mean.y() + 3 * sy - 2.9 * sy * u(eng);
    const OrientedRect box(Pose2(Vec2(0.5 * (x0 + x1), 0.5 * (y0 + y1)), 0.0), x1 - x0, y1 - y0);
    const double got = glr::integral_over_rect(Gaussian2(mean, diag(sx * sx, sy * sy)), box, r12);
    CHECK(std::abs(got - oracle::erf_box_mass(mean, sx, sy, x0, x1, y0, y1)) < 1e-8);
  }
}

TEST_CASE("property: rect integral is rigid invariant and monotone in the rect") {
  std::mt19937_64 eng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto& r12 = glr::gauss_legendre_rule(12);
  for (int i = 0; i < 200; ++i) {
    Mat2 a;
    a << u(eng), u(eng), u(eng), u(eng);
    const Mat2 cov = a * a.transpose() + 0.2 * Mat2::Identity();
    const Gaussian2 g(Vec2(3 * u(eng), 3 * u(eng)), cov);
    const OrientedRect rect(Pose2(Vec2(u(eng), u(eng)), 3 * u(eng)), 5.2, 2.0);
    const double base = glr::integral_over_rect(g, rect, r12);
    CHECK(base >= 0.0);
    CHECK(base <= 1.0);

    const double theta = 3.0 * u(eng);
    const Vec2 shift(100 * u(eng), 100 * u(eng));
    const Pose2 move(shift, theta);
    const Gaussian2 gm = g.transformed(glr::rotation(theta), shift);
    const OrientedRect rm(move.compose(rect.pose()), rect.length(), rect.width());
    CHECK(std::abs(glr::integral_over_rect(gm, rm, r12) - base) < 1e-12);

    const OrientedRect bigger(rect.pose(), 6.0, 2.6);
    CHECK(glr::integral_over_rect(g, bigger, r12) >= base - 1e-14);
  }
}

TEST_CASE("integral_over_disk examples") {
  const Gaussian2 std_normal(Vec2::Zero(), Mat2::Identity());
  for (double radius : {0.5, 1.0, 2.0, 3.0}) {
    CAPTURE(radius);
    CHECK(std::abs(glr::integral_over_disk(std_normal, Vec2::Zero(), radius) -
                   (1.0 - std::exp(-0.5 * radius * radius))) < 1e-8);
  }
  CHECK(std::abs(glr::integral_over_disk(std_normal, Vec2::Zero(), 1.0) - 0.3934693) < 1e-7);

  const Gaussian2 g(Vec2(0.3, -0.2), diag(2.0, 0.5));
  const Vec2 c(1.0, 0.5);
  const double tiny = glr::integral_over_disk(g, c, 1e-6);
  CHECK(tiny == Approx(g.pdf(c) * kPi * 1e-12).epsilon(0.01));
}

TEST_CASE("anisotropic disk mass matches rejection sampling") {
  Mat2 cov;
  cov << 2.5, 0.8, 0.8, 0.6;
  const Gaussian2 g(Vec2(0.4, -0.3), cov);
  const Vec2 center(1.2, 0.1);
  const double radius = 1.5;
  std::mt19937_64 eng(77);
  const int n = 1'000'000;
  const double mc = oracle::mc_disk_fraction(g.mean(), cov, center, radius, n, eng);
  const double got = glr::integral_over_disk(g, center, radius);
  CHECK(std::abs(got - mc) <= 3.0 * oracle::binomial_se(mc, n));
}
