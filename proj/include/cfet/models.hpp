#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cfet/expm/expm.hpp"
#include "cfet/generator.hpp"
#include "cfet/scheme.hpp"

namespace cfet::models {

// ---- driven two-level system
// H = [[delta, V e^{-2i omega t}], [V e^{2i omega t}, -delta]]
struct TwoLevelParams {
  double delta = 0.0;
  double V = 0.0;
  double omega = 0.0;  // half the drive frequency
  double rabi() const;  // sqrt((delta - omega)^2 + V^2)
};

// A = -iH; split() separates -i delta sigma_z.
std::shared_ptr<const Generator> two_level_generator(const TwoLevelParams& p);
// Closed-form U(t, 0).
Matrix two_level_exact(const TwoLevelParams& p, double t);
// |U_21(t, 0)|^2
double two_level_transition(const TwoLevelParams& p, double t);

// Spin-flip probability of a single sech pulse.
double rosen_zener_pinf(double delta, double omega, double V, double tau);

// ---- parametric oscillator, omega(t)^2 = omega0^2 + xi cos(drive t)
struct OscillatorParams {
  double omega0 = 1.0;
  double xi = 0.0;
  double drive = 1.0;
  int levels = 50;  // Fock truncation N_b
  double period() const;
};

// Real companion form of qdd + omega(t)^2 q = 0 acting on (q, qdot). Not skew-hermitian.
std::shared_ptr<const Generator> mathieu_classical(const OscillatorParams& p);

struct FloquetResult {
  std::vector<Complex> multipliers;
  double max_modulus = 0.0;
  double determinant = 0.0;  // should be 1
  bool stable = false;
};
// One-period propagator with `steps` CFET steps.
FloquetResult floquet_stability(const OscillatorParams& p, const CfetScheme& scheme,
                                const expm::ExpmBackend& backend, int steps = 200,
                                double tolerance = 1e-7);

// Fock-space generator; split() separates -i omega0 (n + 1/2).
std::shared_ptr<const Generator> quantum_oscillator(const OscillatorParams& p);

struct CoherentState {
  Vector state;
  double weight_loss = 0.0;  // norm^2 outside the truncation before renormalization
  bool flagged = false;      // weight_loss > 1e-10
};
CoherentState coherent_state(double q, double p, const OscillatorParams& params);

double position_expectation(const Vector& state, double omega0);
double momentum_expectation(const Vector& state, double omega0);

struct LeakageReport {
  double top_occupation = 0.0;  // weight in the highest 10% of Fock levels
  bool warning = false;         // above 1e-6
};
LeakageReport truncation_leakage(const Vector& state);

// ---- spin chain with pulses
struct PulseTrain {
  double V = 0.25;
  double tau = 1.0;
  double omega = 1.0;
  std::vector<double> centers{0.0};
};
// sum_k V e^{-2i omega (t - t_k)} / cosh((t - t_k)/tau)
Complex pulse_field(const PulseTrain& pulse, double t);

struct SpinChainParams {
  int spins = 1;
  double delta = 1.0;
  double J = 0.0;
  PulseTrain pulse;
};

enum class Assembly { Auto, Sparse, MatrixFree };
inline constexpr int kSparseSpinLimit = 14;
inline constexpr int kSpinGuard = 22;

// Basis bit s = 0 means spin s up. Auto assembles sparse matrices up to kSparseSpinLimit spins.
std::shared_ptr<const Generator> spin_chain(const SpinChainParams& p,
                                            Assembly assembly = Assembly::Auto);
Vector all_down(int spins);
// (1/S) sum_s <sigma_z^(s)>
double sigma_z_bar(const Vector& state, int spins);

// ---- hydrogen in an AC field, m = 0, Rydberg units
struct FieldParams {
  double amplitude = 0.1;  // E_z^0
  double frequency = 0.27;
  double a = 1e-6;
  double b = 1e-6;
  double t0 = 5000.0;
};
// h(t) = (1 + a) / (1 + a e^{-b (t - t0)^2})
double envelope(const FieldParams& f, double t);
// E_z(t) = E_z^0 h(t) cos(frequency t)
double field(const FieldParams& f, double t);

struct HydrogenParams {
  int n_max = 2;
  FieldParams field;
};
inline constexpr int kHydrogenGuard = 60;

// Ordered by n, then l.
std::vector<std::pair<int, int>> hydrogen_basis(int n_max);
// <n l 0| z |n' l' 0> in Bohr radii. Throws NumericalError if the radial quadrature does not
// settle to 1e-10 under node doubling.
double dipole_element(int n, int l, int n2, int l2);
// Radial integral int R_nl R_n'l' r^3 dr alone.
double radial_dipole(int n, int l, int n2, int l2);
std::shared_ptr<const Generator> hydrogen(const HydrogenParams& p);
// P_n = sum_l |<n l|psi>|^2 for n = 1..n_max.
std::vector<double> shell_populations(const Vector& state, int n_max);
// CSV rows n,l,n2,l2,d_z for all Delta l = +-1 pairs.
std::string dipole_table_csv(int n_max);

}  // namespace cfet::models
