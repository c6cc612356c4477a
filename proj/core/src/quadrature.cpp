#include "glr/quadrature.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "glr/errors.hpp"

namespace glr {

QuadRule::QuadRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw InvalidArgument("QuadRule: nodes and weights must be nonempty and of equal length");
  }
}

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
  if (!(lo < hi)) {
    throw InvalidArgument("Interval: require a < b");
  }
}

namespace {

struct LegendreValue {
  double p;   // p_n(x)
  double dp;  // p_n'(x)
};

// Three-term (Bonnet) recurrence; derivative from the standard identity
// (1 - x^2) p_n' = n (p_{n-1} - x p_n).
LegendreValue legendre(int n, double x) {
  double p_prev = 1.0;
  double p = x;
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  if (n == 0) {
    return {1.0, 0.0};
  }
  const double dp = n * (p_prev - x * p) / (1.0 - x * x);
  return {p, dp};
}

}  // namespace

QuadRule compute_gauss_legendre_rule(int order) {
  if (order < 1 || order > kMaxQuadOrder) {
    throw InvalidArgument("gauss_legendre_rule: order must be in [1, " +
                          std::to_string(kMaxQuadOrder) + "], got " + std::to_string(order));
  }
  const int n = order;
  std::vector<double> nodes(n);
  std::vector<double> weights(n);
  // Roots come in +/- pairs; solve for the positive half and mirror.
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    LegendreValue v{};
    for (int iter = 0; iter < 100; ++iter) {
      v = legendre(n, x);
      const double step = v.p / v.dp;
      x -= step;
      if (std::abs(step) <= 1e-15) {
        break;
      }
    }
    v = legendre(n, x);
    const double w = 2.0 / ((1.0 - x * x) * v.dp * v.dp);
    // i-th guess is the i-th largest root.
    nodes[n - i] = x;
    nodes[i - 1] = -x;
    weights[n - i] = w;
    weights[i - 1] = w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0.0;
  }
  return QuadRule(std::move(nodes), std::move(weights));
}

const QuadRule& gauss_legendre_rule(int order) {
  if (order < 1 || order > kMaxQuadOrder) {
    throw InvalidArgument("gauss_legendre_rule: order must be in [1, " +
                          std::to_string(kMaxQuadOrder) + "], got " + std::to_string(order));
  }
  static std::array<std::once_flag, kMaxQuadOrder + 1> flags;
  static std::array<std::unique_ptr<const QuadRule>, kMaxQuadOrder + 1> cache;
  std::call_once(flags[order], [order] {
    cache[order] = std::make_unique<const QuadRule>(compute_gauss_legendre_rule(order));
  });
  return *cache[order];
}

}  // namespace glr
