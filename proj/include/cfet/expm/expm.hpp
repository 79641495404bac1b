#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "cfet/types.hpp"

namespace cfet::expm {

// y = H x for a hermitian H.
using Matvec = std::function<void(const Vector& x, Vector& y)>;

struct KrylovDiagnostics {
  int subspace = 0;
  double orthogonality = 0.0;  // max |V^H V - I|, only with check_orthogonality
  bool breakdown = false;      // invariant subspace found, result exact
  int matvecs = 0;
};

// e^{-i tau H} v by Lanczos with full reorthogonalization. At most K matvecs.
Vector krylov_expv(const Matvec& H, const Vector& v, double tau, int K,
                   KrylovDiagnostics* diagnostics = nullptr, bool check_orthogonality = false);

struct ChebyshevDiagnostics {
  int terms = 0;
  int matvecs = 0;
};

// e^{-i tau H} v by a Chebyshev series on [lambda_min, lambda_max]. terms = 0 picks the length
// from the Bessel coefficients (< 1e-16). Throws NumericalError when the recurrence grows, which
// means the spectrum leaves the interval.
Vector chebyshev_expv(const Matvec& H, const Vector& v, double tau, double lambda_min,
                      double lambda_max, int terms = 0, ChebyshevDiagnostics* diagnostics = nullptr);

// Truncated Taylor series of e^{-i tau H} v with `terms` powers, no substepping.
Vector taylor_expv(const Matvec& H, const Vector& v, double tau, int terms, int* matvecs = nullptr);

// Eigendecomposition for anti-hermitian input, scaling and squaring otherwise.
Matrix dense_expm(const Matrix& a);

// exp(i (phi/2) n.sigma) = cos(phi/2) + i sin(phi/2) n.sigma
Eigen::Matrix2cd su2_exp(double phi, const Eigen::Vector3d& n);

// e^{-rho^2/K} (e rho / K)^K without the constant prefactor. Throws std::domain_error for
// 2 rho > K, where the bound does not apply.
double krylov_error_bound(double rho, int K);

// Exponent Omega handed to a backend. For Schroedinger problems Omega = -i tau H.
struct Exponent {
  int dimension = 0;
  std::function<void(const Vector&, Vector&)> apply;  // y = Omega x
  bool skew_hermitian = true;
  std::optional<std::pair<double, double>> bounds;  // spectrum of i Omega
  std::function<Matrix()> dense;                     // optional direct assembly
};

struct ExpmStats {
  int matvecs = 0;
  int subspace = 0;
  double orthogonality = 0.0;
  bool breakdown = false;
};

enum class BackendKind { Dense, Krylov, Chebyshev, Taylor, SU2 };

struct ExpmBackend {
  BackendKind kind = BackendKind::Krylov;
  int K = 20;
  int terms = 0;
  std::optional<std::pair<double, double>> bounds;  // Chebyshev override
  bool check_orthogonality = false;

  static ExpmBackend dense() { return with_kind(BackendKind::Dense); }
  static ExpmBackend krylov(int K);
  static ExpmBackend chebyshev(int terms = 0,
                               std::optional<std::pair<double, double>> bounds = std::nullopt);
  static ExpmBackend taylor(int terms);
  static ExpmBackend su2() { return with_kind(BackendKind::SU2); }

  // "dense", "krylov:20", "chebyshev", "chebyshev:64", "taylor:30", "su2"
  static ExpmBackend parse(const std::string& text);
  std::string str() const;

  // e^{Omega} v
  Vector apply(const Exponent& omega, const Vector& v, ExpmStats* stats = nullptr) const;

 private:
  static ExpmBackend with_kind(BackendKind k) {
    ExpmBackend b;
    b.kind = k;
    return b;
  }
};

}  // namespace cfet::expm
