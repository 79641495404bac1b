#pragma once

#include <vector>

namespace cfet::quad {

// Gauss-Legendre rule on [0,1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(points.size()); }
};

// Closed forms for M <= 4, Newton iteration beyond.
QuadratureRule gauss_rule(int M);
// Always the Newton path; exposed so the closed forms can be cross-checked.
QuadratureRule gauss_rule_newton(int M);

}  // namespace cfet::quad
