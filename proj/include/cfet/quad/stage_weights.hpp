#pragma once

#include <Eigen/Core>

#include "cfet/quad/gauss.hpp"
#include "cfet/scheme.hpp"

namespace cfet::quad {

// Omega_i = dt * sum_m g(i,m) A(t + x_m dt), rows are stages in scheme order.
struct StageWeights {
  QuadratureRule rule;
  Eigen::MatrixXd g;
};

// g_{i,m} = w_m sum_n (2n-1) P_{n-1}(x_m) f_{i,n} on scheme.quadrature_points() Gauss points.
StageWeights stage_weights(const CfetScheme& scheme);

}  // namespace cfet::quad
