#pragma once

#include "cfet/poly.hpp"
#include "cfet/rational.hpp"

namespace cfet::quad {

// Shifted Legendre polynomials on [0,1]: P_0 = 1, P_1 = 2x - 1,
// P_{n+1} = ((2n+1)/(n+1)) (2x-1) P_n - (n/(n+1)) P_{n-1}.
double legendre(int n, double x);
Rational legendre(int n, const Rational& x);
// Value and derivative d/dx in one pass.
void legendre_with_derivative(int n, double x, double& value, double& derivative);
Poly<Rational> legendre_poly(int n);

}  // namespace cfet::quad
