#include "cfet/quad/stage_weights.hpp"

#include "cfet/quad/legendre.hpp"

namespace cfet::quad {

StageWeights stage_weights(const CfetScheme& scheme) {
  StageWeights out;
  const int M = scheme.quadrature_points();
  out.rule = gauss_rule(M);
  out.g = Eigen::MatrixXd::Zero(scheme.stages(), M);
  for (int m = 0; m < M; ++m) {
    const double x = out.rule.points[m];
    for (int n = 1; n <= scheme.columns(); ++n) {
      const double basis = out.rule.weights[m] * (2 * n - 1) * legendre(n - 1, x);
      for (int i = 1; i <= scheme.stages(); ++i) out.g(i - 1, m) += basis * scheme.value(i, n);
    }
  }
  return out;
}

}  // namespace cfet::quad
