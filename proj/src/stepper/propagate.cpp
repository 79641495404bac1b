#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cfet/stepper.hpp"

namespace cfet::stepper {

namespace {

void record(TrajectoryRecord& rec, const PropagateOptions& options, double t, const Vector& v) {
  rec.times.push_back(t);
  rec.norms.push_back(v.norm());
  rec.matvecs.push_back(rec.total_matvecs);
  if (options.keep_states) rec.states.push_back(v);
  if (options.observable) rec.observables.push_back(options.observable(t, v));
}

void checked_step(const Generator& gen, const CfetIntegrator& integrator,
                  const expm::ExpmBackend& backend, double t, double dt, Vector& v,
                  StepStats& stats, long index) {
  try {
    integrator.step(gen, t, dt, v, backend, &stats);
  } catch (const NumericalError& e) {
    throw NumericalError("step " + std::to_string(index) + " at t=" + std::to_string(t) + ": " +
                         e.what());
  }
}

TrajectoryRecord fixed(const Generator& gen, const CfetIntegrator& integrator,
                       const expm::ExpmBackend& backend, const StepPlan& plan, const Vector& v0,
                       const PropagateOptions& options) {
  const double span = plan.T - plan.t0;
  if (!(plan.dt > 0) || !std::isfinite(plan.dt))
    throw std::invalid_argument("plan: dt must be positive and finite");
  const double ratio = span / plan.dt;
  long n = std::lround(ratio);
  bool partial = false;
  if (std::abs(ratio - static_cast<double>(n)) >
      4 * std::numeric_limits<double>::epsilon() * std::max(1.0, ratio)) {
    n = static_cast<long>(std::floor(ratio));
    partial = true;
  }
  TrajectoryRecord rec;
  rec.partial_final_step = partial;
  Vector v = v0;
  StepStats stats;
  record(rec, options, plan.t0, v);
  const long total = n + (partial ? 1 : 0);
  for (long k = 0; k < total; ++k) {
    const double t = plan.t0 + static_cast<double>(k) * plan.dt;
    const double dt = (partial && k == n) ? plan.T - t : plan.dt;
    checked_step(gen, integrator, backend, t, dt, v, stats, k);
    rec.total_matvecs = stats.matvecs;
    ++rec.steps;
    const bool last = k + 1 == total;
    if (last || (k + 1) % plan.record_stride == 0)
      record(rec, options, last ? plan.T : plan.t0 + static_cast<double>(k + 1) * plan.dt, v);
  }
  rec.samples = stats.samples;
  rec.final_state = v;
  return rec;
}

TrajectoryRecord adaptive(const Generator& gen, const CfetIntegrator& integrator,
                          const expm::ExpmBackend& backend, const StepPlan& plan, const Vector& v0,
                          const PropagateOptions& options) {
  const AdaptivePolicy& pol = *plan.adaptive;
  const int N = integrator.scheme().order();
  const double span = plan.T - plan.t0;
  if (!(pol.target > 0)) throw std::invalid_argument("adaptive plan: target must be positive");
  if (pol.macro_steps < 1) throw std::invalid_argument("adaptive plan: macro_steps must be >= 1");
  const double r = pol.ratio > 0 ? pol.ratio : std::pow(2.0, 1.0 / N);
  if (!(r > 1)) throw std::invalid_argument("adaptive plan: ratio must exceed 1");
  double dt = pol.initial_dt > 0 ? pol.initial_dt : span / 100;

  TrajectoryRecord rec;
  Vector v = v0;
  StepStats stats;
  record(rec, options, plan.t0, v);
  double t = plan.t0;
  long index = 0;
  int rejections = 0;
  while (t < plan.T) {
    const double L = std::min(pol.macro_steps * dt, plan.T - t);
    const long n1 = std::max(1L, std::lround(L / dt));
    const long n2 = std::max(n1 + 1, static_cast<long>(std::ceil(n1 * r)));
    const double dt1 = L / n1, dt2 = L / n2;
    Vector coarse = v, fine = v;
    for (long k = 0; k < n1; ++k)
      checked_step(gen, integrator, backend, t + k * dt1, dt1, coarse, stats, index);
    for (long k = 0; k < n2; ++k)
      checked_step(gen, integrator, backend, t + k * dt2, dt2, fine, stats, index + k);
    rec.steps += n1 + n2;
    rec.total_matvecs = stats.matvecs;
    const double c = (coarse - fine).norm() / (L * std::abs(std::pow(dt1, N) - std::pow(dt2, N)));
    const bool measurable = c > 0 && std::isfinite(c);
    // reject an interval whose own error exceeds its share of the target
    if (measurable && c * L * std::pow(dt2, N) > pol.target * L / span && rejections < 8) {
      ++rejections;
      dt = std::min(pol.safety * step_for_target(c, N, pol.target, span), dt / 2);
      continue;
    }
    rejections = 0;
    v = fine;
    index += n2;
    rec.step_sizes.push_back(dt2);
    t = (L == plan.T - t) ? plan.T : t + L;
    record(rec, options, t, v);
    if (measurable) {
      const double proposal = pol.safety * step_for_target(c, N, pol.target, span);
      dt = std::clamp(proposal, dt / 4, dt * 4);
    } else {
      dt *= 4;
    }
  }
  rec.samples = stats.samples;
  rec.final_state = v;
  return rec;
}

}  // namespace

TrajectoryRecord propagate(const Generator& gen, const CfetIntegrator& integrator,
                           const expm::ExpmBackend& backend, const StepPlan& plan, const Vector& v0,
                           const PropagateOptions& options) {
  if (v0.size() != gen.dimension())
    throw std::invalid_argument("propagate: initial state length does not match the generator");
  if (!(plan.T > plan.t0)) throw std::invalid_argument("plan: T must exceed t0");
  if (plan.record_stride < 1) throw std::invalid_argument("plan: record_stride must be >= 1");
  return plan.adaptive ? adaptive(gen, integrator, backend, plan, v0, options)
                       : fixed(gen, integrator, backend, plan, v0, options);
}

void advance(const Generator& gen, const CfetIntegrator& integrator,
             const expm::ExpmBackend& backend, double t0, double t1, long n, Vector& v,
             StepStats* stats) {
  if (n < 1) throw std::invalid_argument("advance: need at least one step");
  const double dt = (t1 - t0) / static_cast<double>(n);
  StepStats local;
  for (long k = 0; k < n; ++k)
    checked_step(gen, integrator, backend, t0 + static_cast<double>(k) * dt, dt, v, local, k);
  if (stats) {
    stats->matvecs += local.matvecs;
    stats->samples += local.samples;
    stats->exponentials += local.exponentials;
  }
}

Matrix propagator(const Generator& gen, const CfetIntegrator& integrator,
                  const expm::ExpmBackend& backend, double t0, double t1, long n) {
  if (n < 1) throw std::invalid_argument("propagator: need at least one step");
  const double dt = (t1 - t0) / static_cast<double>(n);
  Matrix u = Matrix::Identity(gen.dimension(), gen.dimension());
  for (long k = 0; k < n; ++k)
    u = integrator.step_matrix(gen, t0 + static_cast<double>(k) * dt, dt, backend) * u;
  return u;
}

}  // namespace cfet::stepper
