#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cfet/models.hpp"
#include "cfet/step.hpp"
#include "cfet/stepper.hpp"

namespace cfet::models {

namespace {

const Complex I(0.0, 1.0);

void validate(const OscillatorParams& p) {
  if (!(p.omega0 > 0) || !std::isfinite(p.omega0))
    throw std::invalid_argument("oscillator: omega0 must be positive");
  if (!std::isfinite(p.xi)) throw std::invalid_argument("oscillator: xi must be finite");
  if (!(p.drive > 0) || !std::isfinite(p.drive))
    throw std::invalid_argument("oscillator: drive frequency must be positive");
}

double omega_squared(const OscillatorParams& p, double t) {
  return p.omega0 * p.omega0 + p.xi * std::cos(p.drive * t);
}

// -i (omega0/4)(b^2 + b^dagger^2) and -i (omega0/4)(2n + 1)
std::vector<SparseMatrix> fock_terms(const OscillatorParams& p) {
  const int n = p.levels;
  SparseMatrix squeeze(n, n), number(n, n);
  std::vector<Eigen::Triplet<Complex>> ts, tn;
  const Complex f = -I * p.omega0 / 4.0;
  for (int k = 0; k < n; ++k) {
    tn.emplace_back(k, k, f * (2.0 * k + 1.0));
    if (k + 2 < n) {
      const double a = std::sqrt((k + 1.0) * (k + 2.0));
      ts.emplace_back(k + 2, k, f * a);
      ts.emplace_back(k, k + 2, f * a);
    }
  }
  squeeze.setFromTriplets(ts.begin(), ts.end());
  number.setFromTriplets(tn.begin(), tn.end());
  return {squeeze, number};
}

class QuantumOscillator : public AffineGenerator {
 public:
  explicit QuantumOscillator(const OscillatorParams& p)
      : AffineGenerator(fock_terms(p), coefficients(p), true, bounds(fock_terms(p))), p_(p) {}

  std::optional<Split> split() const override {
    Vector d(p_.levels);
    for (int k = 0; k < p_.levels; ++k) d[k] = -I * p_.omega0 * (k + 0.5);
    const OscillatorParams p = p_;
    const double scale = p.xi / (p.omega0 * p.omega0);
    auto rest = std::make_shared<AffineGenerator>(
        fock_terms(p),
        [p, scale](double t) -> std::vector<Complex> {
          const double c1 = scale * std::cos(p.drive * t);
          return {c1, c1};
        },
        true, bounds(fock_terms(p)));
    return Split{d, rest};
  }

 private:
  static Coefficients coefficients(const OscillatorParams& p) {
    const double scale = p.xi / (p.omega0 * p.omega0);
    return [p, scale](double t) -> std::vector<Complex> {
      const double c1 = scale * std::cos(p.drive * t);
      return {c1, 2.0 + c1};
    };
  }
  static BoundsFn bounds(std::vector<SparseMatrix> terms) {
    return [terms = std::move(terms)](const Sample& s) -> std::optional<Bounds> {
      return gershgorin_bounds(terms, s.coefficients);
    };
  }
  OscillatorParams p_;
};

}  // namespace

double OscillatorParams::period() const { return 2.0 * M_PI / drive; }

std::shared_ptr<const Generator> mathieu_classical(const OscillatorParams& p) {
  validate(p);
  SparseMatrix up(2, 2), down(2, 2);
  up.insert(0, 1) = 1.0;
  down.insert(1, 0) = -1.0;
  up.makeCompressed();
  down.makeCompressed();
  return std::make_shared<AffineGenerator>(
      std::vector<SparseMatrix>{up, down},
      [p](double t) -> std::vector<Complex> { return {1.0, omega_squared(p, t)}; }, false);
}

FloquetResult floquet_stability(const OscillatorParams& p, const CfetScheme& scheme,
                                const expm::ExpmBackend& backend, int steps, double tolerance) {
  if (steps < 1) throw std::invalid_argument("floquet_stability: steps must be >= 1");
  auto gen = mathieu_classical(p);
  const CfetIntegrator integ(scheme);
  const Matrix u = stepper::propagator(*gen, integ, backend, 0.0, p.period(), steps);
  FloquetResult r;
  Eigen::ComplexEigenSolver<Matrix> es(u);
  if (es.info() != Eigen::Success) throw NumericalError("floquet_stability: eigensolver failed");
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    r.multipliers.push_back(es.eigenvalues()[k]);
    r.max_modulus = std::max(r.max_modulus, std::abs(es.eigenvalues()[k]));
  }
  r.determinant = u.determinant().real();
  r.stable = r.max_modulus <= 1.0 + tolerance;
  return r;
}

std::shared_ptr<const Generator> quantum_oscillator(const OscillatorParams& p) {
  validate(p);
  if (p.levels < 2) throw std::invalid_argument("quantum oscillator: need at least 2 Fock levels");
  return std::make_shared<QuantumOscillator>(p);
}

CoherentState coherent_state(double q, double p, const OscillatorParams& params) {
  validate(params);
  if (params.levels < 2) throw std::invalid_argument("coherent_state: need at least 2 Fock levels");
  const Complex alpha = std::sqrt(params.omega0 / 2.0) * q + I * p / std::sqrt(2.0 * params.omega0);
  CoherentState c;
  c.state = Vector::Zero(params.levels);
  Complex amp = std::exp(-std::norm(alpha) / 2.0);
  double kept = 0.0;
  for (int n = 0; n < params.levels; ++n) {
    if (n > 0) amp *= alpha / std::sqrt(static_cast<double>(n));
    c.state[n] = amp;
    kept += std::norm(amp);
  }
  // tail from the next terms, avoids 1 - kept cancellation
  double tail = 0.0;
  Complex a = amp;
  for (int n = params.levels; n < params.levels + 2000; ++n) {
    a *= alpha / std::sqrt(static_cast<double>(n));
    const double w = std::norm(a);
    tail += w;
    if (w < 1e-300 || (w < 1e-20 * tail && n > params.levels + std::norm(alpha))) break;
  }
  c.weight_loss = tail / (kept + tail);
  c.flagged = c.weight_loss > 1e-10;
  c.state /= c.state.norm();
  return c;
}

namespace {
Complex lowering_expectation(const Vector& s) {
  Complex b = 0.0;
  for (int n = 0; n + 1 < s.size(); ++n) b += std::conj(s[n]) * std::sqrt(n + 1.0) * s[n + 1];
  return b;
}
}  // namespace

double position_expectation(const Vector& state, double omega0) {
  return 2.0 * lowering_expectation(state).real() / std::sqrt(2.0 * omega0);
}

double momentum_expectation(const Vector& state, double omega0) {
  return 2.0 * std::sqrt(omega0 / 2.0) * lowering_expectation(state).imag();
}

LeakageReport truncation_leakage(const Vector& state) {
  const int n = static_cast<int>(state.size());
  const int top = std::max(1, (n + 9) / 10);
  LeakageReport r;
  const double total = state.squaredNorm();
  for (int k = n - top; k < n; ++k) r.top_occupation += std::norm(state[k]);
  if (total > 0) r.top_occupation /= total;
  r.warning = r.top_occupation > 1e-6;
  return r;
}

}  // namespace cfet::models
