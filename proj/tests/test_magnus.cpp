#include <cmath>
#include <fstream>
#include <map>

#include <gtest/gtest.h>

#include "cfet/magnus/magnus.hpp"

using namespace cfet;
using namespace cfet::magnus;
using lie::Commutator;
using lie::HallBasis;

namespace {

std::map<std::string, Rational> golden() {
  std::ifstream in(std::string(CFET_FIXTURES) + "/magnus8.golden");
  std::map<std::string, Rational> g;
  std::string line;
  while (std::getline(in, line)) {
    const auto arrow = line.find(" -> ");
    if (arrow == std::string::npos) continue;
    g[line.substr(0, arrow)] = parse_rational(line.substr(arrow + 4));
  }
  return g;
}

const MagnusExpansion& expansion8() {
  static const MagnusExpansion m = magnus_expand(8);
  return m;
}

}  // namespace

TEST(Magnus, MatchesGoldenThroughDegree8) {
  const auto g = golden();
  ASSERT_EQ(g.size(), 20u);
  const auto& m = expansion8();
  const auto& b = m.omega.basis();
  int nonzero = 0;
  for (int i = 0; i < b.size(); ++i) {
    if (b.degree(i) > 8) continue;
    const Rational c = m.omega.coefficient(i);
    const auto it = g.find(b.str(i));
    EXPECT_EQ(c, it == g.end() ? Rational(0) : it->second) << b.str(i);
    if (c != 0) ++nonzero;
  }
  EXPECT_EQ(nonzero, 20);
}

TEST(Magnus, SpotValues) {
  const auto& om = expansion8().omega;
  EXPECT_EQ(om.coefficient(Commutator::parse("[A1,A2]")), ratio(-1, 6));
  EXPECT_EQ(om.coefficient(Commutator::parse("[A2,[A1,A2]]")), ratio(-1, 60));
  EXPECT_EQ(om.coefficient(Commutator::parse("[A1,[A1,[A1,[A1,[A1,A2]]]]]")), ratio(-1, 15120));
  EXPECT_EQ(om.coefficient(Commutator::parse("A2")), Rational(0));
  EXPECT_EQ(om.coefficient(Commutator::parse("[A1,A3]")), Rational(0));
}

TEST(Magnus, EvenDegreeAndLeafBoundZeros) {
  const auto& om = expansion8().omega;
  const auto& b = om.basis();
  for (int i = 0; i < b.size(); ++i) {
    if (b.degree(i) % 2 == 0) EXPECT_EQ(om.coefficient(i), Rational(0)) << b.str(i);
    if (!lie::satisfies_leaf_bound(b, i)) EXPECT_EQ(om.coefficient(i), Rational(0)) << b.str(i);
  }
}

TEST(Magnus, TermsAreNestedCommutatorOrders) {
  const auto& m = expansion8();
  // Omega_1 = A_1, Omega_2 = -1/6 [A1,A2] at x = 1
  const auto o1 = m.terms[0].at_end(), o2 = m.terms[1].at_end();
  EXPECT_EQ(o1.size(), 1u);
  EXPECT_EQ(o2.coefficient(Commutator::parse("[A1,A2]")), ratio(-1, 6));
}

TEST(Bch, ThirdOrderCoefficients) {
  auto b = HallBasis::build(2, 3, lie::Grading::Length);
  using E = lie::LieElement<Rational>;
  const E x = E::generator(b, 1), y = E::generator(b, 2);
  const E z = bch_compose<Rational>({x, y}, 2);
  const E xy = bracket(x, y);
  const E want = x + y + ratio(1, 2) * xy + ratio(1, 12) * bracket(x, xy) - ratio(1, 12) * bracket(y, xy);
  EXPECT_TRUE((z - want).empty()) << z.str();
}

TEST(Residuals, RationalSchemesExactlyZero) {
  for (const char* n : {"CF2:1", "CF4:2", "CF4:3", "CF4:3Opt"}) {
    const auto s = scheme_lookup(n);
    const auto r = order_residuals(s, s.order());
    EXPECT_TRUE(r.exact) << n;
    EXPECT_EQ(r.max_abs(), 0.0) << n;
  }
}

TEST(Residuals, FloatSchemesWithinTolerance) {
  const std::map<std::string, double> tol{{"CF6:4", 1e-12},  {"CF6:5", 1e-12},   {"CF6:5b", 1e-11},
                                          {"CF6:5Imp", 1e-12}, {"CF6:5Opt", 1e-12}, {"CF6:6", 1e-12},
                                          {"CF6:6Opt", 1e-12}, {"CF8:11", 1e-10}};
  for (const auto& [n, t] : tol) {
    const auto s = scheme_lookup(n);
    EXPECT_LE(order_residuals(s, s.order()).max_abs(), t) << n;
  }
}

TEST(Residuals, TamperedSchemeFails) {
  const auto s = symmetric_scheme("tampered", 4, 2, {{ratio(1, 2), ratio(7, 20)}});
  const auto r = order_residuals(s, 4);
  EXPECT_NE(r.find("[A1,A2]")->exact.value(), Rational(0));
}

TEST(ErrorTerm, OptimizedSchemesHaveSmallerChi) {
  auto chi = [](const char* n) {
    const auto s = scheme_lookup(n);
    return chi_error_term(s, s.order()).max_abs();
  };
  EXPECT_LT(chi("CF4:3Opt"), chi("CF4:2"));
  EXPECT_LT(chi("CF6:5Opt"), chi("CF6:5"));
  EXPECT_NEAR(chi("CF4:2"), 1.0 / 30, 1e-15);
}

TEST(ErrorTerm, RejectsLowerOrderScheme) {
  EXPECT_THROW(chi_error_term(scheme_lookup("CF2:1"), 4), std::invalid_argument);
}

TEST(Families, FourthOrderCollapsesToCF42) {
  const auto s = solve_4th_family(Rational(0));
  const auto ref = scheme_lookup("CF4:2");
  ASSERT_EQ(s.stages(), 2);
  for (int i = 1; i <= 2; ++i)
    for (int n = 1; n <= 2; ++n) EXPECT_EQ(*s.f(i, n).exact, *ref.f(i, n).exact);
}

TEST(Families, FourthOrderMembersAreFourthOrder) {
  for (auto f21 : {ratio(1, 3), ratio(-1, 5), ratio(2, 7)}) {
    for (auto f23 : {Rational(0), ratio(1, 10)}) {
      const auto s = solve_4th_family(f21, f23);
      EXPECT_EQ(order_residuals(s, 4).max_abs(), 0.0) << s.name();
    }
  }
  EXPECT_THROW(solve_4th_family(Rational(-1)), std::invalid_argument);
}

TEST(Families, SixthOrderAtF11Point16) {
  const auto sol = solve_6th_family(0.16);
  bool found = false;
  for (const auto& s : sol.schemes) {
    EXPECT_LE(order_residuals(s, 6).max_abs(), 1e-10) << s.name();
    if (std::abs(s.value(2, 1) - 0.38752405202531186588) < 1e-12) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Families, SixthOrderGoldenRatioPoint) {
  const double f11 = (5 - std::sqrt(5.0)) / 10;
  const double want = (23 - 4 * std::sqrt(5.0)) / 60;
  const auto sol = solve_6th_family(f11);
  double best = 1;
  for (const auto& s : sol.schemes) best = std::min(best, std::abs(s.value(1, 2) - want));
  EXPECT_LT(best, 1e-13);
}

TEST(Roots, KnownPolynomials) {
  // (x-1)(x-2)(x+3) = x^3 - 7x + 6
  const auto r = real_roots({6, -7, 0, 1});
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -3, 1e-14);
  EXPECT_NEAR(r[1], 1, 1e-14);
  EXPECT_NEAR(r[2], 2, 1e-14);
  EXPECT_TRUE(real_roots({1, 0, 1}).empty());
  const auto d = real_roots({1, -2, 1});  // double root at 1
  ASSERT_FALSE(d.empty());
  EXPECT_NEAR(d[0], 1, 1e-7);
}

TEST(Zrec, ThirdOrderTerm) {
  const auto z = zrec_expand(3);
  // equivalent to 1/6 [A(t2),[A(t1),A(t3)]] - 1/3 [A(t3),[A(t1),A(t2)]] up to Jacobi
  auto b = z.value.basis_ptr();
  using E = lie::LieElement<Rational>;
  const E a1 = E::generator(b, 1), a2 = E::generator(b, 2), a3 = E::generator(b, 3);
  const E want = ratio(1, 6) * bracket(a2, bracket(a1, a3)) - ratio(1, 3) * bracket(a3, bracket(a1, a2));
  EXPECT_TRUE((z.value - want).empty()) << z.str();
}

TEST(Zrec, SimplexIntegralMatchesMagnus) {
  auto b = HallBasis::build(3, 5);
  const auto z = zrec_expand(3);
  const auto integral = simplex_integral(z, b);
  const auto m = magnus_over(b);
  EXPECT_TRUE((integral - m.terms[2].at_end()).empty());
}
