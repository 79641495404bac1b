#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include <gtest/gtest.h>

#include "cfet/expm/expm.hpp"

using namespace cfet;
using namespace cfet::expm;

namespace {

Matrix random_hermitian(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

Vector random_vector(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  return v / v.norm();
}

// Oracle: Pade scaling-and-squaring from Eigen's unsupported module.
Vector reference(const Matrix& h, const Vector& v, double tau) {
  const Matrix a = Complex(0, -tau) * h;
  return a.exp() * v;
}

Matvec matvec(const Matrix& h) {
  return [h](const Vector& x, Vector& y) { y = h * x; };
}

}  // namespace

TEST(Krylov, FullDimensionIsExact) {
  const Matrix h = random_hermitian(16, 1);
  const Vector v = random_vector(16, 2);
  KrylovDiagnostics d;
  const Vector k = krylov_expv(matvec(h), v, 0.7, 16, &d);
  EXPECT_LT((k - reference(h, v, 0.7)).norm(), 1e-12);
  EXPECT_LE(d.matvecs, 16);
}

TEST(Krylov, HappyBreakdownOnInvariantSubspace) {
  Matrix h = Matrix::Zero(8, 8);
  h.diagonal() << 1, 2, 3, 4, 5, 6, 7, 8;
  Vector v = Vector::Zero(8);
  v[0] = v[1] = 1 / std::sqrt(2.0);
  KrylovDiagnostics d;
  const Vector k = krylov_expv(matvec(h), v, 2.0, 6, &d, true);
  EXPECT_TRUE(d.breakdown);
  EXPECT_EQ(d.subspace, 2);
  EXPECT_LT((k - reference(h, v, 2.0)).norm(), 1e-14);
  EXPECT_LT(d.orthogonality, 1e-14);
}

TEST(Krylov, ErrorBoundHolds) {
  // spectrum of tau H spans 2 tau, so rho = tau / 2
  Matrix h = Matrix::Zero(200, 200);
  for (int i = 0; i < 200; ++i) h(i, i) = std::cos(M_PI * (i + 0.5) / 200);
  const Vector v = random_vector(200, 5);
  for (int K : {8, 12, 16}) {
    const double tau = 8.0;
    const double err = (krylov_expv(matvec(h), v, tau, K) - reference(h, v, tau)).norm();
    EXPECT_LT(err, 10 * krylov_error_bound(tau / 2, K)) << "K=" << K;
  }
  EXPECT_THROW(krylov_error_bound(10.0, 5), std::domain_error);
  EXPECT_EQ(krylov_error_bound(0.0, 5), 0.0);
}

TEST(Chebyshev, MatchesReferenceWithTrueBounds) {
  const Matrix h = random_hermitian(16, 3);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector v = random_vector(16, 4);
  ChebyshevDiagnostics d;
  const Vector c = chebyshev_expv(matvec(h), v, 1.3, es.eigenvalues()[0], es.eigenvalues()[15], 0, &d);
  EXPECT_LT((c - reference(h, v, 1.3)).norm(), 1e-12);
  EXPECT_GT(d.terms, 0);
}

TEST(Chebyshev, DivergesWhenSpectrumOutsideInterval) {
  Matrix h = Matrix::Zero(4, 4);
  h.diagonal() << -10, 0, 1, 10;
  const Vector v = random_vector(4, 9);
  EXPECT_THROW(chebyshev_expv(matvec(h), v, 5.0, -1, 1), NumericalError);
}

TEST(Taylor, ConvergesForSmallSteps) {
  const Matrix h = random_hermitian(10, 6);
  const Vector v = random_vector(10, 7);
  EXPECT_LT((taylor_expv(matvec(h), v, 0.05, 20) - reference(h, v, 0.05)).norm(), 1e-13);
}

TEST(Dense, AgreesWithPade) {
  const Matrix h = random_hermitian(12, 8);
  const Matrix a = Complex(0, -0.9) * h;
  EXPECT_LT((dense_expm(a) - a.exp()).norm(), 1e-12);
  Matrix g = Matrix::Random(5, 5);  // general, not skew
  EXPECT_LT((dense_expm(g) - g.exp()).norm(), 1e-12);
}

TEST(Su2, RotationFormula) {
  Eigen::Vector3d n(1, 2, 2);
  n /= 3.0;
  const double phi = 0.8;
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Matrix gen = Complex(0, phi / 2) * (n[0] * sx + n[1] * sy + n[2] * sz);
  EXPECT_LT((Matrix(su2_exp(phi, n)) - gen.exp()).norm(), 1e-15);
  EXPECT_THROW(su2_exp(1.0, Eigen::Vector3d(1, 1, 0)), std::invalid_argument);
}

TEST(Backend, ParseAndPrint) {
  EXPECT_EQ(ExpmBackend::parse("krylov:15").K, 15);
  EXPECT_EQ(ExpmBackend::parse("dense").kind, BackendKind::Dense);
  EXPECT_EQ(ExpmBackend::parse("chebyshev").kind, BackendKind::Chebyshev);
  EXPECT_EQ(ExpmBackend::parse("taylor:12").terms, 12);
  EXPECT_EQ(ExpmBackend::parse("su2").kind, BackendKind::SU2);
  EXPECT_EQ(ExpmBackend::parse(ExpmBackend::krylov(7).str()).K, 7);
  EXPECT_THROW(ExpmBackend::parse("krylov:0"), std::invalid_argument);
  EXPECT_THROW(ExpmBackend::parse("lanczos"), std::invalid_argument);
}

TEST(Backend, AllAgreeOnAntiHermitianExponent) {
  const Matrix h = random_hermitian(16, 11);
  const Matrix omega = Complex(0, -0.6) * h;
  const Vector v = random_vector(16, 12);
  Exponent e;
  e.dimension = 16;
  e.apply = [&](const Vector& x, Vector& y) { y = omega * x; };
  const Vector ref = omega.exp() * v;
  for (auto b : {ExpmBackend::dense(), ExpmBackend::krylov(16), ExpmBackend::chebyshev(),
                 ExpmBackend::taylor(40)}) {
    if (b.kind == BackendKind::Chebyshev) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.6 * h);
      e.bounds = std::make_pair(es.eigenvalues()[0], es.eigenvalues()[15]);
    }
    ExpmStats st;
    EXPECT_LT((b.apply(e, v, &st) - ref).norm(), 1e-10) << b.str();
    EXPECT_GT(st.matvecs, 0);
  }
}

TEST(Backend, KrylovRejectsNonSkewExponent) {
  Exponent e;
  e.dimension = 2;
  e.skew_hermitian = false;
  e.apply = [](const Vector& x, Vector& y) { y = x; };
  EXPECT_THROW(ExpmBackend::krylov(2).apply(e, Vector::Ones(2)), std::invalid_argument);
}

TEST(Backend, Su2MatchesDense) {
  const Matrix h = random_hermitian(2, 13);
  const Matrix omega = Complex(0, -1.7) * h;
  Exponent e;
  e.dimension = 2;
  e.apply = [&](const Vector& x, Vector& y) { y = omega * x; };
  const Vector v = random_vector(2, 14);
  EXPECT_LT((ExpmBackend::su2().apply(e, v) - omega.exp() * v).norm(), 1e-14);
}
