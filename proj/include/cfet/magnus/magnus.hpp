#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfet/lie/lie_element.hpp"
#include "cfet/magnus/series.hpp"
#include "cfet/rational.hpp"
#include "cfet/scheme.hpp"

namespace cfet::magnus {

using lie::BasisPtr;
using lie::LieElement;

// Omega(dt) for A(t) = (1/dt) sum_n A_n P_{n-1}(t/dt), in units where dt = 1.
struct MagnusExpansion {
  BasisPtr basis;
  int order = 0;
  // terms[n-1] = Omega_n(x), the n-fold commutator part, as a polynomial in x = t/dt.
  std::vector<LieSeries<Rational>> terms;
  LieElement<Rational> omega;
};

// Over generators A_1..A_{N/2+1} up to degree N+1. N even, 2 <= N <= 8.
MagnusExpansion magnus_expand(int N);
// Same recursion over an arbitrary Legendre-graded basis.
MagnusExpansion magnus_over(const BasisPtr& basis);
// Golden-file text: one "element -> p/q" line per nonzero coefficient, Hall order.
std::string magnus_table(const LieElement<Rational>& omega);

// log(e^{X_1} e^{X_2} ... e^{X_s}) up to degree N+1 (and the basis cap).
template <class S>
LieElement<S> bch_compose(const std::vector<LieElement<S>>& exponents, int N);

// Stage exponents X_i = sum_n f_{i,n} A_n in the given basis.
template <class S>
std::vector<LieElement<S>> stage_exponents(const CfetScheme& scheme, const BasisPtr& basis);

struct ResidualEntry {
  int element;
  std::string name;
  double value;
  std::optional<Rational> exact;
};

struct ResidualTable {
  BasisPtr basis;
  bool exact = false;
  std::vector<ResidualEntry> entries;

  double max_abs() const;
  double max_abs(const std::vector<int>& elements) const;
  const ResidualEntry* find(const std::string& name) const;
};

// p_k - c_k on every Hall element of degree <= N over A_1..A_{N/2+1}: tilde-Omega of the
// scheme minus the Magnus expansion. Exact for rational schemes.
ResidualTable order_residuals(const CfetScheme& scheme, int N);
// Coefficients of tilde-Omega - Omega on degree-N+1 elements over A_1..A_{N/2+1}. Rejects
// schemes whose order-N residuals exceed `tolerance` (exact zero for rational schemes).
ResidualTable chi_error_term(const CfetScheme& scheme, int N, double tolerance = 1e-9);

// Fourth-order family parameterized by f21 (optionally with the A_3 column f23).
// f21 = f23 = 0 collapses to the two-stage CF4:2.
CfetScheme solve_4th_family(const Rational& f21, const Rational& f23 = Rational(0));

struct SixthOrderSolutions {
  std::vector<CfetScheme> schemes;
  std::vector<std::string> diagnostics;  // singular completions, rejected roots
};
// Five-stage sixth-order schemes for free parameter f11. Every real root f21 of the quintic is
// completed in closed form; where the closed form divides by zero the remaining conditions are
// solved by elimination, which can give two schemes per root. Each returned scheme has order
// residuals below 1e-10.
SixthOrderSolutions solve_6th_family(double f11);
// Coefficients (ascending powers of y) of the quintic p(f11, y).
std::vector<double> sixth_order_quintic(double f11);

// Real roots of a polynomial given by ascending coefficients, sorted ascending.
std::vector<double> real_roots(const std::vector<double>& coefficients);

// Appendix-style time-labeled recursion: Z_n with generator k standing for A(t_k).
struct TimeLabeledSeries {
  int n = 0;
  LieElement<Rational> value;  // Length-graded basis over labels t_1..t_n
  std::string str() const;
};
TimeLabeledSeries zrec_expand(int n);
// Integral of Z_n over 1 > t_1 > ... > t_n > 0 with A(t) = sum_a A_a P_{a-1}(t).
LieElement<Rational> simplex_integral(const TimeLabeledSeries& z, const BasisPtr& basis);

}  // namespace cfet::magnus
