#include "cfet/quad/gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfet/quad/legendre.hpp"

namespace cfet::quad {

QuadratureRule gauss_rule_newton(int M) {
  if (M < 1) throw std::invalid_argument("quadrature needs M >= 1");
  QuadratureRule rule;
  rule.points.resize(M);
  rule.weights.resize(M);
  for (int k = 0; k < (M + 1) / 2; ++k) {
    // Chebyshev-like guess for the k-th largest root on [-1,1], mapped to [0,1].
    double xi = std::cos(std::numbers::pi * (k + 0.75) / (M + 0.5));
    double x = 0.5 * (1.0 + xi);
    double p = 0, dp = 1;
    for (int it = 0; it < 100; ++it) {
      legendre_with_derivative(M, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-17) break;
    }
    legendre_with_derivative(M, x, p, dp);
    // On [0,1]: w = 1 / (x (1-x) P_M'(x)^2)
    double w = 1.0 / (x * (1.0 - x) * dp * dp);
    rule.points[M - 1 - k] = x;
    rule.points[k] = 1.0 - x;
    rule.weights[M - 1 - k] = w;
    rule.weights[k] = w;
  }
  if (M % 2 == 1) rule.points[M / 2] = 0.5;
  return rule;
}

QuadratureRule gauss_rule(int M) {
  if (M < 1) throw std::invalid_argument("quadrature needs M >= 1");
  switch (M) {
    case 1:
      return {{0.5}, {1.0}};
    case 2: {
      double d = std::sqrt(3.0) / 6.0;
      return {{0.5 - d, 0.5 + d}, {0.5, 0.5}};
    }
    case 3: {
      double d = std::sqrt(3.0 / 20.0);
      return {{0.5 - d, 0.5, 0.5 + d}, {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0}};
    }
    case 4: {
      double r = 2.0 * std::sqrt(6.0 / 5.0);
      double outer = std::sqrt((3.0 + r) / 28.0);
      double inner = std::sqrt((3.0 - r) / 28.0);
      double s30 = std::sqrt(30.0);
      double w_out = (18.0 - s30) / 72.0;
      double w_in = (18.0 + s30) / 72.0;
      return {{0.5 - outer, 0.5 - inner, 0.5 + inner, 0.5 + outer}, {w_out, w_in, w_in, w_out}};
    }
    default:
      return gauss_rule_newton(M);
  }
}

}  // namespace cfet::quad
