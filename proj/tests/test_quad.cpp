#include <cmath>

#include <gtest/gtest.h>

#include "cfet/quad/gauss.hpp"
#include "cfet/quad/legendre.hpp"
#include "cfet/quad/stage_weights.hpp"
#include "cfet/scheme.hpp"

using namespace cfet;
using namespace cfet::quad;

TEST(Legendre, ShiftedValues) {
  // P_2(2x-1) = 6x^2 - 6x + 1
  for (double x : {0.0, 0.25, 0.7, 1.0}) EXPECT_NEAR(legendre(2, x), 6 * x * x - 6 * x + 1, 1e-15);
  EXPECT_EQ(legendre(3, Rational(1, 2)), Rational(0));
  EXPECT_EQ(legendre(4, Rational(1)), Rational(1));
}

TEST(Legendre, Orthogonality) {
  const auto r = gauss_rule(8);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      double s = 0;
      for (int m = 0; m < r.size(); ++m) s += r.weights[m] * legendre(a, r.points[m]) * legendre(b, r.points[m]);
      EXPECT_NEAR(s, a == b ? 1.0 / (2 * a + 1) : 0.0, 1e-15);
    }
}

TEST(Gauss, ExactForPolynomials) {
  for (int M = 1; M <= 8; ++M) {
    const auto r = gauss_rule(M);
    for (int k = 0; k <= 2 * M - 1; ++k) {
      double s = 0;
      for (int m = 0; m < M; ++m) s += r.weights[m] * std::pow(r.points[m], k);
      EXPECT_NEAR(s, 1.0 / (k + 1), 2e-15) << "M=" << M << " k=" << k;
    }
  }
}

TEST(Gauss, ClosedFormsAgreeWithNewton) {
  for (int M = 1; M <= 4; ++M) {
    const auto a = gauss_rule(M), b = gauss_rule_newton(M);
    for (int m = 0; m < M; ++m) {
      EXPECT_NEAR(a.points[m], b.points[m], 1e-15);
      EXPECT_NEAR(a.weights[m], b.weights[m], 1e-15);
    }
  }
  // two-point nodes 1/2 -+ sqrt(3)/6
  const auto r = gauss_rule(2);
  EXPECT_NEAR(r.points[0], 0.5 - std::sqrt(3.0) / 6, 1e-16);
}

TEST(StageWeights, ReproduceLegendreProjection) {
  // sum_m g_{i,m} P_{n-1}(x_m) = f_{i,n}: a generator equal to P_{n-1} picks out column n
  const auto s = scheme_lookup("CF4:2");
  const auto w = stage_weights(s);
  ASSERT_EQ(w.rule.size(), 2);
  for (int i = 0; i < s.stages(); ++i)
    for (int n = 1; n <= 2; ++n) {
      double acc = 0;
      for (int m = 0; m < w.rule.size(); ++m) acc += w.g(i, m) * legendre(n - 1, w.rule.points[m]);
      EXPECT_NEAR(acc, s.value(i + 1, n), 1e-15);
    }
}

TEST(StageWeights, RowSumsEqualFirstColumn) {
  for (const auto& name : scheme_names()) {
    const auto s = scheme_lookup(name);
    const auto w = stage_weights(s);
    for (int i = 0; i < s.stages(); ++i)
      EXPECT_NEAR(w.g.row(i).sum(), s.value(i + 1, 1), 1e-14) << name;
  }
}
