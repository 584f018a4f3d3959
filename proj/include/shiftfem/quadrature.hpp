#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace shiftfem {

/// Gauss-Legendre rule on the reference interval [0,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre nodes and weights on [0,1], exact for polynomials of degree
/// <= 2*points - 1. Supports 1 <= points <= 20.
inline GaussRule gauss_rule(int points) {
  if (points < 1 || points > 20)
    throw std::domain_error("gauss_rule: points must lie in [1,20]");

  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);

  // Newton iteration on the Legendre polynomial over [-1,1].
  for (int i = 0; i < points; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int l = 2; l <= points; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // roots come out in descending order; store ascending on [0,1]
    rule.nodes[points - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[points - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace shiftfem
