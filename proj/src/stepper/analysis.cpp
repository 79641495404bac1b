#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cfet/stepper.hpp"

namespace cfet::stepper {

ErrorEstimate estimate_error_constant(const Generator& gen, const CfetIntegrator& integrator,
                                      const expm::ExpmBackend& backend, double t0, double T,
                                      double dt1, double dt2, const Vector& v0,
                                      int checkpoints) {
  if (!(dt1 > 0) || !(dt2 > 0) || dt1 == dt2)
    throw std::invalid_argument("estimate_error_constant: need distinct positive dt1, dt2");
  if (!(T > t0)) throw std::invalid_argument("estimate_error_constant: T must exceed t0");
  if (checkpoints < 1) throw std::invalid_argument("estimate_error_constant: checkpoints >= 1");
  const int N = integrator.scheme().order();
  const double seg = (T - t0) / checkpoints;
  long n1 = std::max(1L, static_cast<long>(std::ceil(seg / dt1 - 1e-9)));
  long n2 = std::max(1L, static_cast<long>(std::ceil(seg / dt2 - 1e-9)));
  if (n1 == n2) (dt1 > dt2 ? n2 : n1) += 1;

  ErrorEstimate out;
  out.dt1 = seg / n1;
  out.dt2 = seg / n2;
  Vector x1 = v0, x2 = v0;
  for (int j = 0; j < checkpoints; ++j) {
    const double a = t0 + j * seg, b = (j + 1 == checkpoints) ? T : t0 + (j + 1) * seg;
    advance(gen, integrator, backend, a, b, n1, x1);
    advance(gen, integrator, backend, a, b, n2, x2);
    out.max_difference = std::max(out.max_difference, (x1 - x2).norm());
  }
  const double spread = std::abs(std::pow(out.dt1, N) - std::pow(out.dt2, N));
  out.c = out.max_difference / ((T - t0) * spread);
  out.reliable = out.max_difference > 1e-13 * std::max(1.0, v0.norm()) * std::sqrt(n1 + n2);
  return out;
}

ErrorEstimate estimate_error_constant(const Generator& gen, const CfetIntegrator& integrator,
                                      const expm::ExpmBackend& backend, double t0, double T,
                                      double dt1, const Vector& v0) {
  const int N = integrator.scheme().order();
  return estimate_error_constant(gen, integrator, backend, t0, T, dt1,
                                 dt1 / std::pow(2.0, 1.0 / N), v0);
}

double step_for_target(double c, int N, double target, double span) {
  if (!(c > 0) || !(target > 0) || !(span > 0))
    throw std::invalid_argument("step_for_target: c, target and span must be positive");
  return std::pow(target / (c * span), 1.0 / N);
}

double effective_error_constant(int s, double c, int N) {
  if (c < 0) throw std::invalid_argument("effective_error_constant: c must be >= 0");
  if (N < 1 || s < 1) throw std::invalid_argument("effective_error_constant: need s, N >= 1");
  return s * std::pow(c, 1.0 / N);
}

double empirical_effective_constant(int s, double dt, double eps, double T, int N) {
  if (!(dt > 0) || !(T > 0) || eps < 0)
    throw std::invalid_argument("empirical_effective_constant: need dt, T > 0 and eps >= 0");
  return (s / dt) * std::pow(eps / T, 1.0 / N);
}

double crossover_threshold(int N1, double c1, int N2, double c2) {
  if (!(N1 < N2)) throw std::invalid_argument("crossover_threshold: need N1 < N2");
  if (!(c1 > 0) || !(c2 > 0)) throw std::invalid_argument("crossover_threshold: constants must be positive");
  return std::pow(c1 / c2, static_cast<double>(N1) * N2 / (N2 - N1));
}

double frobenius_error(const Matrix& U, const Matrix& V) {
  if (U.rows() != U.cols() || U.rows() != V.rows() || U.cols() != V.cols())
    throw std::invalid_argument("frobenius_error: need equal square matrices");
  if (U.rows() == 0) return 0.0;
  return std::sqrt((U - V).squaredNorm() / static_cast<double>(U.rows()));
}

}  // namespace cfet::stepper
