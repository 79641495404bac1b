#include <cmath>
#include <stdexcept>
#include <vector>

#include "cfet/expm/expm.hpp"

namespace cfet::expm {

namespace {

constexpr int kMaxTerms = 100000;

// Coefficients (2 - delta_k0) J_k(z) until they drop below 1e-16 past k = z.
std::vector<double> bessel_coefficients(double z, int terms) {
  std::vector<double> c;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double j = std::cyl_bessel_j(static_cast<double>(k), z);
    c.push_back(k == 0 ? j : 2 * j);
    if (terms > 0) {
      if (k + 1 == terms) break;
    } else if (k > z && std::abs(j) < 1e-16) {
      break;
    }
  }
  return c;
}

}  // namespace

Vector chebyshev_expv(const Matvec& H, const Vector& v, double tau, double lambda_min,
                      double lambda_max, int terms, ChebyshevDiagnostics* diagnostics) {
  if (!(lambda_min < lambda_max))
    throw std::invalid_argument("Chebyshev backend needs lambda_min < lambda_max");
  if (terms < 0) throw std::invalid_argument("Chebyshev term count must be >= 0");
  ChebyshevDiagnostics diag;
  if (tau == 0.0 || v.norm() == 0.0) {
    if (diagnostics) *diagnostics = diag;
    return v;
  }
  const double center = (lambda_max + lambda_min) / 2;
  const double radius = (lambda_max - lambda_min) / 2;
  const double z = std::abs(tau) * radius;
  const std::vector<double> c = bessel_coefficients(z, terms);
  // e^{-i tau H} = e^{-i tau center} sum_k c_k (-i sgn(tau))^k T_k(X), X = (H - center)/radius
  const Complex step(0.0, tau > 0 ? -1.0 : 1.0);

  const double limit = 2.0 * v.norm();
  Vector prev = v, cur(v.size()), next(v.size()), hx(v.size());
  auto apply_x = [&](const Vector& x, Vector& y) {
    H(x, hx);
    ++diag.matvecs;
    y = (hx - center * x) / radius;
  };
  Vector out = c[0] * v;
  Complex phase = 1.0;
  if (c.size() > 1) {
    apply_x(prev, cur);
    phase *= step;
    out += (c[1] * phase) * cur;
  }
  for (std::size_t k = 2; k < c.size(); ++k) {
    apply_x(cur, next);
    next = 2.0 * next - prev;
    if (!(next.norm() <= limit))
      throw NumericalError("Chebyshev recurrence diverges at term " + std::to_string(k) +
                           ": spectrum outside [" + std::to_string(lambda_min) + ", " +
                           std::to_string(lambda_max) + "]");
    phase *= step;
    out += (c[k] * phase) * next;
    prev.swap(cur);
    cur.swap(next);
  }
  diag.terms = static_cast<int>(c.size());
  if (diagnostics) *diagnostics = diag;
  return std::exp(Complex(0.0, -tau * center)) * out;
}

Vector taylor_expv(const Matvec& H, const Vector& v, double tau, int terms, int* matvecs) {
  if (terms < 1) throw std::invalid_argument("Taylor backend needs at least one term");
  Vector out = v, term = v, hx(v.size());
  for (int k = 1; k <= terms; ++k) {
    H(term, hx);
    term = hx * Complex(0.0, -tau / k);
    out += term;
  }
  if (matvecs) *matvecs = terms;
  return out;
}

}  // namespace cfet::expm
