#include "cfet/quad/legendre.hpp"

#include <stdexcept>

namespace cfet::quad {

namespace {

template <class S>
S recurrence(int n, const S& x) {
  if (n < 0) throw std::invalid_argument("Legendre degree must be >= 0");
  S p0(1);
  if (n == 0) return p0;
  S y = S(2) * x - S(1);
  S p1 = y;
  for (int k = 1; k < n; ++k) {
    S p2 = (S(2 * k + 1) * y * p1 - S(k) * p0) / S(k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

double legendre(int n, double x) { return recurrence<double>(n, x); }

Rational legendre(int n, const Rational& x) { return recurrence<Rational>(n, x); }

void legendre_with_derivative(int n, double x, double& value, double& derivative) {
  if (n < 0) throw std::invalid_argument("Legendre degree must be >= 0");
  if (n == 0) {
    value = 1.0;
    derivative = 0.0;
    return;
  }
  const double y = 2.0 * x - 1.0;
  double p0 = 1.0, p1 = y, d0 = 0.0, d1 = 2.0;
  for (int k = 1; k < n; ++k) {
    double p2 = ((2 * k + 1) * y * p1 - k * p0) / (k + 1);
    double d2 = ((2 * k + 1) * (2.0 * p1 + y * d1) - k * d0) / (k + 1);
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  value = p1;
  derivative = d1;
}

Poly<Rational> legendre_poly(int n) {
  if (n < 0) throw std::invalid_argument("Legendre degree must be >= 0");
  Poly<Rational> p0 = Poly<Rational>::constant(1);
  if (n == 0) return p0;
  Poly<Rational> y(std::vector<Rational>{-1, 2});
  Poly<Rational> p1 = y;
  for (int k = 1; k < n; ++k) {
    Poly<Rational> p2 = (y * p1) * ratio(2 * k + 1, k + 1) - p0 * ratio(k, k + 1);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return p1;
}

}  // namespace cfet::quad
