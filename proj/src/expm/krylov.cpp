#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cfet/expm/expm.hpp"

namespace cfet::expm {

Vector krylov_expv(const Matvec& H, const Vector& v, double tau, int K,
                   KrylovDiagnostics* diagnostics, bool check_orthogonality) {
  if (K < 2) throw std::invalid_argument("Krylov subspace size must be >= 2");
  KrylovDiagnostics diag;
  const double beta0 = v.norm();
  if (beta0 == 0.0 || tau == 0.0) {
    if (diagnostics) *diagnostics = diag;
    return v;
  }
  const int n = static_cast<int>(v.size());
  const int kmax = std::min(K, n);
  std::vector<Vector> V;
  V.reserve(kmax);
  V.push_back(v / beta0);
  std::vector<double> alpha, beta;
  Vector w(n);
  double scale = 0.0;
  for (int j = 0; j < kmax; ++j) {
    H(V[j], w);
    ++diag.matvecs;
    const double a = V[j].dot(w).real();
    alpha.push_back(a);
    scale = std::max(scale, std::abs(a));
    // full reorthogonalization against the whole basis
    for (int i = 0; i <= j; ++i) w -= V[i].dot(w) * V[i];
    if (j + 1 == kmax) break;
    const double b = w.norm();
    if (b <= 1e-13 * std::max(scale, 1.0)) {
      diag.breakdown = true;
      break;
    }
    scale = std::max(scale, b);
    beta.push_back(b);
    V.push_back(w / b);
  }
  if (static_cast<int>(V.size()) == n) diag.breakdown = true;

  const int m = static_cast<int>(alpha.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) T(i, i) = alpha[i];
  for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  const Eigen::MatrixXd& Q = es.eigenvectors();
  Eigen::VectorXcd phase(m);
  for (int k = 0; k < m; ++k) phase[k] = std::exp(Complex(0.0, -tau * es.eigenvalues()[k])) * Q(0, k);
  const Eigen::VectorXcd c = Q.cast<Complex>() * phase;

  Vector out = Vector::Zero(n);
  for (int i = 0; i < m; ++i) out += c[i] * V[i];
  out *= beta0;

  diag.subspace = m;
  if (check_orthogonality) {
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        worst = std::max(worst, std::abs(V[i].dot(V[j]) - (i == j ? 1.0 : 0.0)));
    diag.orthogonality = worst;
  }
  if (diagnostics) *diagnostics = diag;
  return out;
}

double krylov_error_bound(double rho, int K) {
  if (rho < 0 || K < 1) throw std::invalid_argument("krylov_error_bound: need rho >= 0, K >= 1");
  if (rho == 0.0) return 0.0;
  if (2 * rho > K) throw std::domain_error("krylov_error_bound: bound needs 2 rho <= K");
  return std::exp(-rho * rho / K + K * std::log(std::exp(1.0) * rho / K));
}

}  // namespace cfet::expm
