#include <cmath>

#include <gtest/gtest.h>

#include "cfet/models.hpp"
#include "cfet/stepper.hpp"

using namespace cfet;
using namespace cfet::stepper;

namespace {

const models::TwoLevelParams kTwoLevel{2.0, 0.5, 1.0};

Vector up() {
  Vector v = Vector::Zero(2);
  v[0] = 1.0;
  return v;
}

double final_error(const char* scheme, long n, double T) {
  auto g = models::two_level_generator(kTwoLevel);
  const CfetIntegrator integ(scheme_lookup(scheme));
  Vector v = up();
  advance(*g, integ, expm::ExpmBackend::su2(), 0, T, n, v);
  return (v - models::two_level_exact(kTwoLevel, T).col(0)).norm();
}

}  // namespace

TEST(Step, ObservedOrderOnTwoLevel) {
  const double T = 2 * M_PI;
  const std::vector<std::pair<const char*, int>> cases{
      {"CF2:1", 2}, {"CF4:2", 4}, {"CF4:3Opt", 4}, {"CF6:5Opt", 6}};
  for (const auto& [name, N] : cases) {
    const double e1 = final_error(name, 100, T), e2 = final_error(name, 200, T);
    EXPECT_NEAR(std::log2(e1 / e2), N, 0.3) << name;
  }
}

TEST(Step, SamplesPerStepEqualsQuadraturePoints) {
  auto inner = models::two_level_generator(kTwoLevel);
  auto counting = std::make_shared<CountingGenerator>(inner);
  for (const auto& n : scheme_names()) {
    const CfetIntegrator integ(scheme_lookup(n));
    const long before = counting->samples_taken();
    Vector v = up();
    integ.step(*counting, 0.0, 0.1, v, expm::ExpmBackend::dense());
    EXPECT_EQ(counting->samples_taken() - before, integ.scheme().quadrature_points()) << n;
  }
}

TEST(Step, ForwardBackwardIdentityForSymmetricSchemes) {
  auto g = models::two_level_generator(kTwoLevel);
  for (const auto& n : scheme_names()) {
    const CfetIntegrator integ(scheme_lookup(n));
    if (!integ.scheme().symmetric()) continue;
    Vector v = up();
    const double t = 0.3, dt = 0.25;
    integ.step(*g, t, dt, v, expm::ExpmBackend::dense());
    integ.step(*g, t + dt, -dt, v, expm::ExpmBackend::dense());
    EXPECT_LT((v - up()).norm(), 1e-12) << n;
  }
}

TEST(Step, StepMatrixMatchesVectorStep) {
  auto g = models::two_level_generator(kTwoLevel);
  const CfetIntegrator integ(scheme_lookup("CF6:5Opt"));
  const Matrix u = integ.step_matrix(*g, 0.4, 0.3, expm::ExpmBackend::dense());
  const Matrix uk = integ.step_matrix(*g, 0.4, 0.3, expm::ExpmBackend::krylov(2));
  Vector v = up();
  integ.step(*g, 0.4, 0.3, v, expm::ExpmBackend::krylov(2));
  EXPECT_LT((u.col(0) - v).norm(), 1e-14);
  EXPECT_LT((u - uk).norm(), 1e-14);
}

TEST(Step, RejectsMismatchedState) {
  auto g = models::two_level_generator(kTwoLevel);
  const CfetIntegrator integ(scheme_lookup("CF4:2"));
  Vector v = Vector::Ones(3);
  EXPECT_THROW(integ.step(*g, 0, 0.1, v, expm::ExpmBackend::dense()), std::invalid_argument);
  Vector w = up();
  EXPECT_THROW(integ.step(*g, 0, 0.0, w, expm::ExpmBackend::dense()), std::invalid_argument);
}

TEST(Propagate, RecordsAndPartialStep) {
  auto g = models::two_level_generator(kTwoLevel);
  const CfetIntegrator integ(scheme_lookup("CF4:2"));
  StepPlan plan;
  plan.t0 = 0;
  plan.T = 1.05;
  plan.dt = 0.1;
  plan.record_stride = 5;
  PropagateOptions po;
  po.observable = [](double, const Vector& v) { return std::vector<double>{std::norm(v[1])}; };
  const auto rec = propagate(*g, integ, expm::ExpmBackend::krylov(2), plan, up(), po);
  EXPECT_TRUE(rec.partial_final_step);
  EXPECT_EQ(rec.steps, 11);
  EXPECT_DOUBLE_EQ(rec.times.back(), 1.05);
  EXPECT_EQ(rec.times.size(), 4u);  // 0, 0.5, 1.0, 1.05
  EXPECT_NEAR(rec.observables.back()[0], models::two_level_transition(kTwoLevel, 1.05), 1e-5);
  for (std::size_t k = 1; k < rec.matvecs.size(); ++k) EXPECT_GE(rec.matvecs[k], rec.matvecs[k - 1]);
}

TEST(Propagate, NormDriftSmall) {
  auto g = models::two_level_generator(kTwoLevel);
  const CfetIntegrator integ(scheme_lookup("CF4:3Opt"));
  StepPlan plan;
  plan.T = 50;
  plan.dt = 0.05;
  const auto rec = propagate(*g, integ, expm::ExpmBackend::krylov(2), plan, up());
  for (double n : rec.norms) EXPECT_NEAR(n, 1.0, 1e-13);
}

TEST(Propagate, AdaptiveReachesTarget) {
  auto g = models::two_level_generator(kTwoLevel);
  const CfetIntegrator integ(scheme_lookup("CF4:3Opt"));
  StepPlan plan;
  plan.T = 10 * M_PI;
  AdaptivePolicy pol;
  pol.target = 1e-7;
  plan.adaptive = pol;
  const auto rec = propagate(*g, integ, expm::ExpmBackend::su2(), plan, up());
  const double err = (rec.final_state - models::two_level_exact(kTwoLevel, plan.T).col(0)).norm();
  EXPECT_LT(err, 1e-6);
  EXPECT_FALSE(rec.step_sizes.empty());
}

TEST(ErrorConstant, ConsistentWithObservedError) {
  auto g = models::two_level_generator(kTwoLevel);
  const CfetIntegrator integ(scheme_lookup("CF4:2"));
  const double T = 10 * M_PI;
  const auto est = estimate_error_constant(*g, integ, expm::ExpmBackend::su2(), 0, T, 0.05, up());
  EXPECT_TRUE(est.reliable);
  // observed max error at dt = 0.05 against the closed form
  double obs = 0;
  Vector v = up();
  const long n = std::lround(T / 0.05);
  for (long k = 0; k < n; ++k) {
    advance(*g, integ, expm::ExpmBackend::su2(), k * 0.05, (k + 1) * 0.05, 1, v);
    obs = std::max(obs, (v - models::two_level_exact(kTwoLevel, (k + 1) * 0.05).col(0)).norm());
  }
  const double predicted = est.c * T * std::pow(0.05, 4);
  EXPECT_GT(predicted / obs, 0.5);
  EXPECT_LT(predicted / obs, 2.0);
}

TEST(Analysis, StepForTargetInvertsErrorModel) {
  const double c = 0.3, T = 20;
  const double dt = step_for_target(c, 4, 1e-8, T);
  EXPECT_NEAR(c * T * std::pow(dt, 4), 1e-8, 1e-20);
}

TEST(Analysis, CrossoverThresholds) {
  // c_bar = s: CF2:1 vs CF4:2, CF4:2 vs CF6:5, CF6:5 vs CF8:11
  EXPECT_NEAR(crossover_threshold(2, 1, 4, 2), 6.25e-2, 1e-12);
  EXPECT_NEAR(crossover_threshold(4, 2, 6, 5) / std::pow(2.0 / 5.0, 12), 1.0, 1e-12);
  EXPECT_NEAR(crossover_threshold(6, 5, 8, 11) / std::pow(5.0 / 11.0, 24), 1.0, 1e-12);
}

TEST(Analysis, EffectiveConstants) {
  EXPECT_DOUBLE_EQ(effective_error_constant(5, std::pow(0.1, 6), 6), 0.5);
  // eps = c T dt^N with c_bar = s c^{1/N}
  const double c = 2e-3, T = 7, dt = 0.01;
  const double eps = c * T * std::pow(dt, 6);
  EXPECT_NEAR(empirical_effective_constant(5, dt, eps, T, 6), effective_error_constant(5, c, 6), 1e-12);
  Matrix a = Matrix::Identity(2, 2), b = Matrix::Zero(2, 2);
  EXPECT_NEAR(frobenius_error(a, b), 1.0, 1e-15);
}

TEST(InteractionPicture, SameStateAsLabFrame) {
  auto g = models::two_level_generator(kTwoLevel);
  auto ip = interaction_picture(*g);
  const CfetIntegrator integ(scheme_lookup("CF6:5Opt"));
  const double T = 3.0;
  Vector x = ip->to_interaction(0.0, up());
  advance(*ip, integ, expm::ExpmBackend::krylov(2), 0, T, 300, x);
  const Vector lab = ip->to_lab(T, x);
  EXPECT_LT((lab - models::two_level_exact(kTwoLevel, T).col(0)).norm(), 1e-10);
}

TEST(InteractionPicture, RequiresSplitOrDiagonal) {
  auto m = models::mathieu_classical({1.0, 0.5, 1.0, 50});
  EXPECT_THROW(interaction_picture(*m), std::invalid_argument);
  Matrix d = Matrix::Ones(2, 2);
  EXPECT_THROW(InteractionPicture(d, models::two_level_generator(kTwoLevel)), std::invalid_argument);
}
