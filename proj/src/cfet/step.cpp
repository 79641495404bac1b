#include "cfet/step.hpp"

#include <cmath>
#include <stdexcept>

namespace cfet {

CfetIntegrator::CfetIntegrator(CfetScheme scheme)
    : scheme_(std::move(scheme)), weights_(quad::stage_weights(scheme_)) {}

std::vector<Sample> CfetIntegrator::take_samples(const Generator& gen, double t, double dt) const {
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("step: dt must be finite and nonzero");
  std::vector<Sample> samples;
  samples.reserve(weights_.rule.size());
  for (double x : weights_.rule.points) samples.push_back(gen.sample(t + x * dt));
  return samples;
}

void CfetIntegrator::apply_stages(const Generator& gen, const std::vector<Sample>& samples,
                                  double dt, Vector& v, const expm::ExpmBackend& backend,
                                  StepStats* stats) const {
  const int M = static_cast<int>(samples.size());
  std::vector<double> w(M);
  for (int i = scheme_.stages() - 1; i >= 0; --i) {
    bool zero = true;
    for (int m = 0; m < M; ++m) {
      w[m] = dt * weights_.g(i, m);
      zero = zero && w[m] == 0.0;
    }
    if (zero) continue;
    expm::Exponent omega;
    omega.dimension = gen.dimension();
    omega.skew_hermitian = gen.skew_hermitian();
    omega.apply = [&](const Vector& x, Vector& y) { gen.apply(samples, w, x, y); };
    if (backend.kind == expm::BackendKind::Chebyshev && !backend.bounds)
      omega.bounds = gen.spectral_bounds(samples, w);
    expm::ExpmStats es;
    try {
      v = backend.apply(omega, v, &es);
    } catch (const NumericalError& e) {
      throw NumericalError("stage " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!v.allFinite())
      throw NumericalError("stage " + std::to_string(i + 1) + ": state is no longer finite");
    if (stats) {
      stats->matvecs += es.matvecs;
      ++stats->exponentials;
    }
  }
}

void CfetIntegrator::step(const Generator& gen, double t, double dt, Vector& v,
                          const expm::ExpmBackend& backend, StepStats* stats) const {
  if (v.size() != gen.dimension())
    throw std::invalid_argument("step: state length does not match the generator dimension");
  const auto samples = take_samples(gen, t, dt);
  if (stats) stats->samples += static_cast<long>(samples.size());
  apply_stages(gen, samples, dt, v, backend, stats);
}

Matrix CfetIntegrator::step_matrix(const Generator& gen, double t, double dt,
                                   const expm::ExpmBackend& backend) const {
  const int n = gen.dimension();
  if (n > kDenseGuard)
    throw std::invalid_argument("step_matrix: dimension " + std::to_string(n) +
                                " exceeds the dense guard " + std::to_string(kDenseGuard));
  const auto samples = take_samples(gen, t, dt);
  if (backend.kind == expm::BackendKind::Dense) {
    Matrix u = Matrix::Identity(n, n);
    std::vector<double> w(samples.size());
    for (int i = 0; i < scheme_.stages(); ++i) {
      for (std::size_t m = 0; m < samples.size(); ++m) w[m] = dt * weights_.g(i, m);
      u = u * expm::dense_expm(gen.dense(samples, w));
    }
    return u;
  }
  Matrix u(n, n);
  for (int j = 0; j < n; ++j) {
    Vector col = Vector::Zero(n);
    col[j] = 1.0;
    apply_stages(gen, samples, dt, col, backend, nullptr);
    u.col(j) = col;
  }
  return u;
}

}  // namespace cfet
