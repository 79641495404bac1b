#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cfet/step.hpp"

namespace cfet::stepper {

// Step-size control by comparing two step sizes over macro-intervals.
struct AdaptivePolicy {
  double target = 1e-8;  // error goal at the end of the span
  double ratio = 0.0;    // dt1/dt2; 0 means 2^{1/N}
  int macro_steps = 32;
  double safety = 0.8;
  double initial_dt = 0.0;  // 0 means span/100
};

struct StepPlan {
  double t0 = 0.0;
  double T = 0.0;  // end time
  double dt = 0.0;
  int record_stride = 1;
  std::optional<AdaptivePolicy> adaptive;
};

using Observable = std::function<std::vector<double>(double t, const Vector& state)>;

struct PropagateOptions {
  Observable observable;
  bool keep_states = false;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Vector> states;  // only with keep_states
  std::vector<std::vector<double>> observables;
  std::vector<double> norms;
  std::vector<long> matvecs;  // cumulative at each record
  std::vector<double> step_sizes;  // adaptive plans: dt used per macro-interval
  Vector final_state;
  long steps = 0;
  long samples = 0;
  long total_matvecs = 0;
  bool partial_final_step = false;
};

TrajectoryRecord propagate(const Generator& gen, const CfetIntegrator& integrator,
                           const expm::ExpmBackend& backend, const StepPlan& plan, const Vector& v0,
                           const PropagateOptions& options = {});

// Propagates from t0 to t1 in n equal steps.
void advance(const Generator& gen, const CfetIntegrator& integrator,
             const expm::ExpmBackend& backend, double t0, double t1, long n, Vector& v,
             StepStats* stats = nullptr);
// Dense propagator U(t1, t0) from n equal steps.
Matrix propagator(const Generator& gen, const CfetIntegrator& integrator,
                  const expm::ExpmBackend& backend, double t0, double t1, long n);

struct ErrorEstimate {
  double c = 0.0;               // error constant in eps = c T dt^N
  double max_difference = 0.0;  // max over checkpoints of |x_1 - x_2|
  double dt1 = 0.0, dt2 = 0.0;  // step sizes actually used
  bool reliable = false;        // difference above the round-off floor
};

// max_t |x_1(t) - x_2(t)| = c T |dt1^N - dt2^N| over `checkpoints` equally spaced times.
ErrorEstimate estimate_error_constant(const Generator& gen, const CfetIntegrator& integrator,
                                      const expm::ExpmBackend& backend, double t0, double T,
                                      double dt1, double dt2, const Vector& v0,
                                      int checkpoints = 16);
// dt2 = dt1 / 2^{1/N}
ErrorEstimate estimate_error_constant(const Generator& gen, const CfetIntegrator& integrator,
                                      const expm::ExpmBackend& backend, double t0, double T,
                                      double dt1, const Vector& v0);
// Largest step reaching error `target` over a span of length `span` for a given c.
double step_for_target(double c, int N, double target, double span);

// c_bar = s c^{1/N}
double effective_error_constant(int s, double c, int N);
// c_bar from a measured max error eps over span T at step dt: (s/dt)(eps/T)^{1/N}
double empirical_effective_constant(int s, double dt, double eps, double T, int N);
// Value of eps/T below which the order-N2 scheme wins: (c1/c2)^{N1 N2/(N2 - N1)}
double crossover_threshold(int N1, double c1, int N2, double c2);

// sqrt((1/L) sum |U_ij - V_ij|^2)
double frobenius_error(const Matrix& U, const Matrix& V);

// x^I = e^{-tD} x for A = D + B(t); the wrapped generator is e^{-tD} B(t) e^{tD}.
class InteractionPicture : public Generator {
 public:
  InteractionPicture(Vector diagonal, std::shared_ptr<const Generator> rest);
  // D must be diagonal.
  InteractionPicture(const Matrix& D, std::shared_ptr<const Generator> rest);

  int dimension() const override { return rest_->dimension(); }
  Sample sample(double t) const override { return rest_->sample(t); }
  void apply(std::span<const Sample> samples, std::span<const double> weights, const Vector& x,
             Vector& y) const override;
  bool skew_hermitian() const override;
  std::optional<Bounds> spectral_bounds(const Sample& s) const override;
  using Generator::apply;
  using Generator::spectral_bounds;

  Vector to_lab(double t, const Vector& x_interaction) const;
  Vector to_interaction(double t, const Vector& x_lab) const;
  const Vector& diagonal() const { return d_; }

 private:
  Vector d_;
  std::shared_ptr<const Generator> rest_;
};

// Wraps a generator that exposes a split; throws std::invalid_argument otherwise.
std::shared_ptr<InteractionPicture> interaction_picture(const Generator& gen);

}  // namespace cfet::stepper
