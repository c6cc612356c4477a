#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace glr {

inline constexpr int kMaxQuadOrder = 256;

/// Immutable Gauss-Legendre node/weight table on [-1, 1].
///
/// Nodes are the roots of the order-n Legendre polynomial in increasing
/// order; weights are strictly positive and sum to 2.
class QuadRule {
 public:
  QuadRule(std::vector<double> nodes, std::vector<double> weights);

  int order() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Closed interval [a, b] with a < b.
struct Interval {
  double a;
  double b;

  Interval(double lo, double hi);

  double half_width() const { return 0.5 * (b - a); }
  double midpoint() const { return 0.5 * (a + b); }
  /// Affine map of a reference node xi in [-1, 1] into [a, b].
  double map(double xi) const { return half_width() * xi + midpoint(); }
};

/// Order-n Gauss-Legendre rule, 1 <= n <= 256.
///
/// Rules are built once per order and cached; the returned reference stays
/// valid for the lifetime of the program. Safe under concurrent first access.
const QuadRule& gauss_legendre_rule(int order);

/// Builds a rule without touching the cache.
QuadRule compute_gauss_legendre_rule(int order);

/// (b - a)/2 * sum_i w_i f(t_i), with t_i the rule nodes mapped into `domain`.
template <typename F>
double integrate_1d(F&& f, const Interval& domain, const QuadRule& rule) {
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    sum += weights[i] * f(domain.map(nodes[i]));
  }
  return domain.half_width() * sum;
}

/// Tensor-product cubature over rect_x x rect_y using `rule` on both axes.
template <typename G>
double integrate_2d(G&& g, const Interval& rect_x, const Interval& rect_y, const QuadRule& rule) {
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double psi = rect_y.map(nodes[j]);
    double inner = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      inner += weights[i] * g(rect_x.map(nodes[i]), psi);
    }
    sum += weights[j] * inner;
  }
  return rect_x.half_width() * rect_y.half_width() * sum;
}

}  // namespace glr
