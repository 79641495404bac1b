#include <cmath>

#include <gtest/gtest.h>

#include "cfet/scheme.hpp"

using namespace cfet;

TEST(Registry, AllSchemesPresent) {
  const std::vector<std::string> want{"CF2:1",  "CF4:2",    "CF4:3",    "CF4:3Opt",
                                      "CF6:4",  "CF6:5",    "CF6:5b",   "CF6:5Imp",
                                      "CF6:5Opt", "CF6:6",  "CF6:6Opt", "CF8:11"};
  for (const auto& n : want) EXPECT_NO_THROW(scheme_lookup(n)) << n;
  EXPECT_THROW(scheme_lookup("CF5:1"), std::invalid_argument);
}

TEST(Registry, StageCountsMatchNames) {
  for (const auto& n : scheme_names()) {
    const auto s = scheme_lookup(n);
    const auto colon = n.find(':');
    EXPECT_EQ(s.order(), std::stoi(n.substr(2, colon - 2))) << n;
    EXPECT_EQ(s.stages(), std::stoi(n.substr(colon + 1))) << n;
  }
}

TEST(Registry, SumRuleAndSymmetry) {
  for (const auto& n : scheme_names()) {
    const auto s = scheme_lookup(n);
    EXPECT_LT(std::abs(sum_rule_defect(s)), 1e-14) << n;
    if (s.symmetric()) EXPECT_LT(symmetry_defect(s), 1e-15) << n;
  }
}

TEST(Registry, ExactSchemesAreRational) {
  for (const char* n : {"CF2:1", "CF4:2", "CF4:3", "CF4:3Opt"}) EXPECT_TRUE(scheme_lookup(n).exact()) << n;
  for (const char* n : {"CF6:4", "CF6:5Opt", "CF8:11"}) EXPECT_FALSE(scheme_lookup(n).exact()) << n;
}

TEST(Registry, QuadraturePoints) {
  EXPECT_EQ(scheme_lookup("CF2:1").quadrature_points(), 1);
  EXPECT_EQ(scheme_lookup("CF4:2").quadrature_points(), 2);
  EXPECT_EQ(scheme_lookup("CF6:5").quadrature_points(), 3);
  EXPECT_GE(scheme_lookup("CF6:5Opt").quadrature_points(), 3);
}

TEST(SchemeDocument, RoundTrip) {
  for (const auto& n : scheme_names()) {
    const auto s = scheme_lookup(n);
    const auto t = load_scheme(dump_scheme(s));
    EXPECT_EQ(t.name(), s.name());
    EXPECT_EQ(t.stages(), s.stages());
    EXPECT_EQ(t.exact(), s.exact());
    for (int i = 1; i <= s.stages(); ++i)
      for (int k = 1; k <= s.columns(); ++k) EXPECT_EQ(t.value(i, k), s.value(i, k)) << n;
  }
}

TEST(SchemeDocument, RejectsBrokenSumRule) {
  const std::string doc =
      R"({"name":"bad","order":2,"stages":2,"symmetric":false,"f":[["1/2"],["1/3"]]})";
  EXPECT_THROW(load_scheme(doc), std::invalid_argument);
  EXPECT_THROW(load_scheme("{\"name\":\"x\"}"), std::invalid_argument);
  EXPECT_THROW(load_scheme("not json"), std::invalid_argument);
}

TEST(SchemeDocument, RejectsFalseSymmetryFlag) {
  const std::string doc =
      R"({"name":"asym","order":2,"stages":2,"symmetric":true,"f":[["1/4","1/5"],["3/4","0"]]})";
  EXPECT_THROW(load_scheme(doc), std::invalid_argument);
}

TEST(SymmetricScheme, MirrorsRows) {
  const auto s = symmetric_scheme("t", 4, 3, {{Rational(1, 4), Rational(1, 5)}, {Rational(1, 2), 0}});
  EXPECT_EQ(s.stages(), 3);
  EXPECT_DOUBLE_EQ(s.value(3, 1), 0.25);
  EXPECT_DOUBLE_EQ(s.value(3, 2), -0.2);
  EXPECT_TRUE(s.symmetric());
}
