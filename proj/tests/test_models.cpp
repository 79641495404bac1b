#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cfet/models.hpp"
#include "cfet/stepper.hpp"

using namespace cfet;
using namespace cfet::models;

namespace {

Vector random_state(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  return v / v.norm();
}

void expect_skew_at_random_times(const Generator& gen, unsigned seed, double t_max) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-t_max, t_max);
  for (int k = 0; k < 100; ++k) {
    const Matrix a = gen.dense(u(rng));
    ASSERT_LT((a + a.adjoint()).norm(), 1e-13 * (1 + a.norm()));
  }
}

Vector run(const Generator& gen, const char* scheme, const expm::ExpmBackend& b, double t0,
           double t1, long n, Vector v) {
  const CfetIntegrator integ(scheme_lookup(scheme));
  stepper::advance(gen, integ, b, t0, t1, n, v);
  return v;
}

// Radial function from std::assoc_laguerre, independent of the model's quadrature.
double radial_oracle(int n, int l, double r) {
  const double rho = 2 * r / n;
  const double norm = std::sqrt(std::pow(2.0 / n, 3) * std::tgamma(n - l) / (2 * n * std::tgamma(n + l + 1)));
  return norm * std::exp(-rho / 2) * std::pow(rho, l) * std::assoc_laguerre(n - l - 1, 2 * l + 1, rho);
}

double radial_integral_oracle(int n, int l, int n2, int l2) {
  // composite Simpson on [0, 200]
  const int m = 200000;
  const double h = 200.0 / m;
  double s = 0;
  for (int k = 0; k <= m; ++k) {
    const double r = k * h;
    const double w = (k == 0 || k == m) ? 1 : (k % 2 ? 4 : 2);
    s += w * radial_oracle(n, l, r) * radial_oracle(n2, l2, r) * r * r * r;
  }
  return s * h / 3;
}

}  // namespace

TEST(Hermiticity, AllModelsAtRandomTimes) {
  expect_skew_at_random_times(*two_level_generator({1.0, 0.4, 0.7}), 1, 20);
  expect_skew_at_random_times(*quantum_oscillator({1.0, 0.3, 2.0, 20}), 2, 20);
  SpinChainParams sc;
  sc.spins = 3;
  sc.J = 0.3;
  sc.pulse.centers = {-2, 3};
  expect_skew_at_random_times(*spin_chain(sc), 3, 10);
  HydrogenParams hp;
  hp.n_max = 3;
  hp.field.amplitude = 0.2;
  expect_skew_at_random_times(*hydrogen(hp), 4, 6000);
}

TEST(TwoLevel, NoCouplingGivesDiagonalPhases) {
  const TwoLevelParams p{1.3, 0.0, 0.8};
  const Matrix u = two_level_exact(p, 2.5);
  EXPECT_NEAR(std::abs(u(0, 0) - std::exp(Complex(0, -1.3 * 2.5))), 0, 1e-14);
  EXPECT_NEAR(std::abs(u(1, 1) - std::exp(Complex(0, 1.3 * 2.5))), 0, 1e-14);
  EXPECT_NEAR(std::abs(u(0, 1)), 0, 1e-15);
  const Vector v =
      run(*two_level_generator(p), "CF4:2", expm::ExpmBackend::su2(), 0, 2.5, 7, Vector::Unit(2, 0));
  EXPECT_LT((v - u.col(0)).norm(), 1e-13);
}

TEST(TwoLevel, ClosedFormMatchesNumericalPropagator) {
  // oracle: very fine steps with the dense Pade exponential
  const TwoLevelParams p{0.9, 0.6, 1.1};
  auto g = two_level_generator(p);
  const CfetIntegrator integ(scheme_lookup("CF8:11"));
  const Matrix u = stepper::propagator(*g, integ, expm::ExpmBackend::dense(), 0, 4.0, 400);
  EXPECT_LT((u - two_level_exact(p, 4.0)).norm(), 1e-12);
}

TEST(TwoLevel, FloquetPeriodicity) {
  const TwoLevelParams p{0.9, 0.6, 1.1};
  const double T = M_PI / p.omega;
  auto g = two_level_generator(p);
  const CfetIntegrator integ(scheme_lookup("CF6:5Opt"));
  const Matrix u1 = stepper::propagator(*g, integ, expm::ExpmBackend::dense(), 0, T, 200);
  const Matrix u3 = stepper::propagator(*g, integ, expm::ExpmBackend::dense(), 0, 3 * T, 600);
  EXPECT_LT((u3 - u1 * u1 * u1).norm(), 1e-12);
}

TEST(TwoLevel, TransitionProbabilityFormula) {
  const TwoLevelParams p{2.0, 0.5, 1.0};
  const double R = p.rabi();
  EXPECT_NEAR(R, std::hypot(1.0, 0.5), 1e-15);
  for (double t : {0.0, 0.7, 3.1, 10.0}) {
    const double want = std::pow(p.V / R * std::sin(R * t), 2);
    EXPECT_NEAR(two_level_transition(p, t), want, 1e-14);
  }
  // exact resonance, R = V
  EXPECT_NEAR(two_level_transition({1.0, 0.3, 1.0}, M_PI / 0.6), 1.0, 1e-14);
}

TEST(RosenZener, ClosedForm) {
  EXPECT_NEAR(rosen_zener_pinf(1, 1, 0.25, 1), 0.5, 1e-15);
  EXPECT_NEAR(rosen_zener_pinf(1, 1, 0.5, 1), 1.0, 1e-15);
  EXPECT_LT(rosen_zener_pinf(3, 1, 0.25, 1), 1e-4);
  EXPECT_THROW(rosen_zener_pinf(1, 1, 0.25, 0), std::invalid_argument);
}

TEST(RosenZener, SingleSpinMatchesClosedForm) {
  SpinChainParams sc;
  sc.spins = 1;
  sc.pulse.V = 0.25;
  auto g = spin_chain(sc);
  const Vector v = run(*g, "CF6:5Opt", expm::ExpmBackend::su2(), -40, 40, 4000, all_down(1));
  EXPECT_NEAR((1 + sigma_z_bar(v, 1)) / 2, rosen_zener_pinf(1, 1, 0.25, 1), 1e-9);
}

TEST(Mathieu, DeterminantIsOne) {
  for (double xi : {0.1, 0.5, 1.5}) {
    const auto r = floquet_stability({1.2, xi, 1.0, 0}, scheme_lookup("CF6:5Opt"),
                                     expm::ExpmBackend::dense(), 200);
    EXPECT_NEAR(r.determinant, 1.0, 1e-10) << xi;
  }
}

TEST(Mathieu, UndrivenMultipliersOnUnitCircle) {
  const auto r = floquet_stability({1.3, 0.0, 1.0, 0}, scheme_lookup("CF6:5Opt"),
                                   expm::ExpmBackend::dense(), 200);
  for (const auto& m : r.multipliers) EXPECT_NEAR(std::abs(m), 1.0, 1e-10);
  EXPECT_TRUE(r.stable);
}

TEST(Mathieu, KnownStableAndUnstablePoints) {
  // x = (omega0/drive)^2, y = xi/drive^2 with drive = 1
  const auto s = floquet_stability({std::sqrt(2.0), 1.0, 1.0, 0}, scheme_lookup("CF6:5Opt"),
                                   expm::ExpmBackend::dense());
  EXPECT_TRUE(s.stable);
  const auto u = floquet_stability({1.0, 1.0, 1.0, 0}, scheme_lookup("CF6:5Opt"),
                                   expm::ExpmBackend::dense());
  EXPECT_FALSE(u.stable);
  EXPECT_GT(u.max_modulus, 1.5);
}

TEST(Mathieu, NotSkewHermitian) {
  EXPECT_FALSE(mathieu_classical({1.0, 0.2, 1.0, 0})->skew_hermitian());
}

TEST(Oscillator, UndrivenIsDiagonal) {
  const Matrix a = quantum_oscillator({1.0, 0.0, 1.0, 12})->dense(0.4);
  Matrix off = a;
  off.diagonal().setZero();
  EXPECT_LT(off.norm(), 1e-15);
  for (int k = 0; k < 12; ++k) EXPECT_NEAR(a(k, k).imag(), -(k + 0.5), 1e-14);
}

TEST(Oscillator, CouplesOnlyTwoApart) {
  const Matrix a = quantum_oscillator({1.0, 0.7, 1.0, 12})->dense(0.3);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      if (i != j && std::abs(i - j) != 2) EXPECT_EQ(std::abs(a(i, j)), 0.0) << i << "," << j;
  EXPECT_GT(std::abs(a(0, 2)), 0.0);
}

TEST(Oscillator, CoherentStateExpectations) {
  const OscillatorParams p{1.0, 0.0, 1.0, 50};
  const auto c = coherent_state(3.0, 0.0, p);
  EXPECT_FALSE(c.flagged);
  EXPECT_NEAR(position_expectation(c.state, 1.0), 3.0, 1e-8);
  EXPECT_NEAR(momentum_expectation(c.state, 1.0), 0.0, 1e-12);
  const auto big = coherent_state(12.0, 0.0, {1.0, 0.0, 1.0, 20});
  EXPECT_TRUE(big.flagged);
  EXPECT_TRUE(truncation_leakage(big.state).warning);
  EXPECT_FALSE(truncation_leakage(c.state).warning);
}

TEST(Oscillator, QuantumMeanFollowsClassicalTrajectory) {
  // quadratic Hamiltonian: <q>, <p> obey the classical equations exactly
  const OscillatorParams p{1.3, 0.3, 1.0, 60};
  const double T = 2 * M_PI;
  const auto c = coherent_state(1.0, 0.5, p);
  const Vector psi = run(*quantum_oscillator(p), "CF6:5Opt", expm::ExpmBackend::krylov(20), 0, T,
                         600, c.state);
  Vector qc(2);
  qc << 1.0, 0.5;
  const Vector cl = run(*mathieu_classical(p), "CF6:5Opt", expm::ExpmBackend::dense(), 0, T, 600, qc);
  EXPECT_NEAR(position_expectation(psi, p.omega0), cl[0].real(), 1e-8);
  EXPECT_NEAR(momentum_expectation(psi, p.omega0), cl[1].real(), 1e-8);
}

TEST(SpinChain, SparseAndMatrixFreeAgree) {
  for (int S = 1; S <= 6; ++S) {
    SpinChainParams sc;
    sc.spins = S;
    sc.J = 0.37;
    sc.delta = 0.8;
    sc.pulse.centers = {0.0, 4.0};
    auto a = spin_chain(sc, Assembly::Sparse), b = spin_chain(sc, Assembly::MatrixFree);
    const Vector x = random_state(1 << S, S);
    for (double t : {-1.3, 0.2, 2.9}) {
      Vector ya, yb;
      a->apply(t, x, ya);
      b->apply(t, x, yb);
      EXPECT_LT((ya - yb).norm(), 1e-13) << S;
    }
    const Vector va = run(*a, "CF4:3Opt", expm::ExpmBackend::krylov(16), -3, 3, 60, x);
    const Vector vb = run(*b, "CF4:3Opt", expm::ExpmBackend::krylov(16), -3, 3, 60, x);
    EXPECT_LT((va - vb).norm(), 1e-13) << S;
  }
}

TEST(SpinChain, UncoupledSpinsFactorize) {
  SpinChainParams one;
  one.pulse.centers = {-3.0, 3.0};
  SpinChainParams three = one;
  three.spins = 3;
  auto g1 = spin_chain(one), g3 = spin_chain(three);
  Vector v1 = all_down(1), v3 = all_down(3);
  EXPECT_DOUBLE_EQ(sigma_z_bar(v3, 3), -1.0);
  const CfetIntegrator integ(scheme_lookup("CF6:5Opt"));
  for (int k = 0; k < 20; ++k) {
    const double t0 = -10 + k, t1 = t0 + 1;
    stepper::advance(*g1, integ, expm::ExpmBackend::su2(), t0, t1, 20, v1);
    stepper::advance(*g3, integ, expm::ExpmBackend::krylov(8), t0, t1, 20, v3);
    EXPECT_NEAR(sigma_z_bar(v3, 3), sigma_z_bar(v1, 1), 1e-12);
  }
}

TEST(SpinChain, GuardAndPulsePhase) {
  SpinChainParams sc;
  sc.spins = kSpinGuard + 1;
  EXPECT_THROW(spin_chain(sc), std::invalid_argument);
  PulseTrain p;
  p.centers = {0.0, 5.0};
  // each pulse carries its own phase reference
  const Complex want = p.V + p.V * std::exp(Complex(0, -10.0)) / std::cosh(5.0);
  EXPECT_NEAR(std::abs(pulse_field(p, 5.0) - want), 0, 1e-15);
  EXPECT_NEAR(pulse_field({0.25, 1.0, 1.0, {0.0}}, 0.0).real(), 0.25, 1e-15);
}

TEST(Hydrogen, BasisOrdering) {
  const auto b = hydrogen_basis(3);
  ASSERT_EQ(b.size(), 6u);
  EXPECT_EQ(b[0], std::make_pair(1, 0));
  EXPECT_EQ(b[2], std::make_pair(2, 1));
  EXPECT_EQ(b[5], std::make_pair(3, 2));
}

TEST(Hydrogen, SelectionRules) {
  EXPECT_EQ(dipole_element(2, 0, 3, 2), 0.0);
  EXPECT_EQ(dipole_element(2, 1, 3, 1), 0.0);
  EXPECT_EQ(dipole_element(1, 0, 1, 0), 0.0);
}

TEST(Hydrogen, KnownMatrixElements) {
  EXPECT_NEAR(dipole_element(1, 0, 2, 1), 128 * std::sqrt(2.0) / 243, 1e-13);
  EXPECT_NEAR(std::abs(dipole_element(2, 0, 2, 1)), 3.0, 1e-12);
  EXPECT_NEAR(dipole_element(2, 1, 1, 0), dipole_element(1, 0, 2, 1), 1e-15);
}

TEST(Hydrogen, RadialIntegralsAgainstLaguerreOracle) {
  for (auto [n, l, n2, l2] : std::vector<std::array<int, 4>>{
           {1, 0, 2, 1}, {2, 0, 3, 1}, {3, 2, 4, 1}, {4, 3, 6, 2}, {5, 1, 5, 0}}) {
    const double want = radial_integral_oracle(n, l, n2, l2);
    EXPECT_NEAR(radial_dipole(n, l, n2, l2), want, 1e-9 * (1 + std::abs(want)))
        << n << l << " " << n2 << l2;
  }
}

TEST(Hydrogen, ZeroFieldKeepsGroundState) {
  HydrogenParams hp;
  hp.n_max = 3;
  hp.field.amplitude = 0.0;
  auto g = hydrogen(hp);
  Vector v = Vector::Zero(6);
  v[0] = 1;
  v = run(*g, "CF4:2", expm::ExpmBackend::krylov(6), 0, 100, 100, v);
  const auto pops = shell_populations(v, 3);
  EXPECT_NEAR(pops[0], 1.0, 1e-13);
  EXPECT_NEAR(pops[1] + pops[2], 0.0, 1e-13);
}

TEST(Hydrogen, Envelope) {
  const FieldParams f;
  EXPECT_NEAR(envelope(f, f.t0), 1.0, 1e-15);
  EXPECT_NEAR(envelope(f, f.t0 + 1e5), 1 + f.a, 1e-15);
  EXPECT_NEAR(field(f, f.t0), f.amplitude * std::cos(f.frequency * f.t0), 1e-15);
}

TEST(Hydrogen, DipoleTableRows) {
  const auto csv = dipole_table_csv(2);
  EXPECT_NE(csv.find("1,0,2,1,"), std::string::npos);
  EXPECT_EQ(csv.find("1,0,2,0,"), std::string::npos);
}

TEST(SpinChain, InteractionPictureMatchesLabFrame) {
  SpinChainParams sc;
  sc.spins = 4;
  sc.J = 0.3;
  for (auto assembly : {Assembly::Sparse, Assembly::MatrixFree}) {
    auto g = spin_chain(sc, assembly);
    auto ip = stepper::interaction_picture(*g);
    const Vector x0 = random_state(16, 21);
    const Vector lab = run(*g, "CF6:5Opt", expm::ExpmBackend::dense(), -4, 4, 800, x0);
    const Vector x = run(*ip, "CF6:5Opt", expm::ExpmBackend::krylov(16), -4, 4, 800,
                         ip->to_interaction(-4, x0));
    EXPECT_LT((ip->to_lab(4, x) - lab).norm(), 1e-9);
  }
}
