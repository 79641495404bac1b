#pragma once

#include "cfet/expm/expm.hpp"
#include "cfet/generator.hpp"
#include "cfet/quad/stage_weights.hpp"
#include "cfet/scheme.hpp"

namespace cfet {

struct StepStats {
  long matvecs = 0;
  long samples = 0;
  long exponentials = 0;
};

// One CFET step x(t+dt) = e^{Omega_1} ... e^{Omega_s} x(t) with
// Omega_i = dt sum_m g_{i,m} A(t + x_m dt). The s-th exponential acts first.
class CfetIntegrator {
 public:
  explicit CfetIntegrator(CfetScheme scheme);

  const CfetScheme& scheme() const { return scheme_; }
  const quad::StageWeights& weights() const { return weights_; }
  int samples_per_step() const { return weights_.rule.size(); }

  // dt may be negative (backward step). Backend failures are rethrown with the stage index.
  void step(const Generator& gen, double t, double dt, Vector& v, const expm::ExpmBackend& backend,
            StepStats* stats = nullptr) const;
  // Dense one-step propagator; dimension must be within kDenseGuard.
  Matrix step_matrix(const Generator& gen, double t, double dt,
                     const expm::ExpmBackend& backend) const;

 private:
  std::vector<Sample> take_samples(const Generator& gen, double t, double dt) const;
  void apply_stages(const Generator& gen, const std::vector<Sample>& samples, double dt, Vector& v,
                    const expm::ExpmBackend& backend, StepStats* stats) const;

  CfetScheme scheme_;
  quad::StageWeights weights_;
};

}  // namespace cfet
