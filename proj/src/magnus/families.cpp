#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cfet/magnus/magnus.hpp"

namespace cfet::magnus {

CfetScheme solve_4th_family(const Rational& f21, const Rational& f23) {
  if (f21 == -1) throw std::invalid_argument("solve_4th_family: f21 = -1 has no solution");
  const Rational f11 = (1 - f21) / 2;
  const Rational f12 = Rational(1) / (3 * (1 + f21));
  if (sgn(f21) == 0 && sgn(f23) == 0)
    return symmetric_scheme("CF4:2", 4, 2, {{f11, f12}});
  const Rational f13 = -f23 / 2;
  std::vector<Coefficient> r1{f11, f12, f13}, r2{f21, Rational(0), f23};
  std::string name = "CF4:3(f21=" + to_string(f21);
  if (sgn(f23) != 0) name += ",f23=" + to_string(f23);
  return symmetric_scheme(name + ")", 4, 3, {r1, r2});
}

std::vector<double> sixth_order_quintic(double f11) {
  const long double x = f11;
  auto poly = [x](std::initializer_list<long double> c) {
    long double v = 0, p = 1;
    for (long double a : c) {
      v += a * p;
      p *= x;
    }
    return static_cast<double>(v);
  };
  return {
      poly({-2, 30, -192, 680, -1440, 1815, -1250, 360}),
      poly({18, -232, 1230, -3440, 5345, -4350, 1440}),
      poly({-60, 650, -2740, 5655, -5710, 2250}),
      poly({90, -800, 2535, -3450, 1710}),
      poly({-60, 425, -920, 630}),
      poly({15, -80, 90}),
  };
}

namespace {

using Rows = std::vector<std::vector<Coefficient>>;

CfetScheme five_stage(const std::string& name, double f11, double f12, double f13, double f21,
                      double f22, double f23) {
  return symmetric_scheme(name, 6, 5,
                          Rows{{f11, f12, f13},
                               {f21, f22, f23},
                               {1 - 2 * f11 - 2 * f21, 0.0, -2 * f13 - 2 * f23}});
}

long double horner(const std::vector<long double>& c, long double y) {
  long double v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * y + *it;
  return v;
}

// Nearly coincident roots of the quintic are one double root: replace the pair by the root of
// the derivative between them.
std::vector<double> merge_double_roots(const std::vector<double>& roots, double f11) {
  const auto q = sixth_order_quintic(f11);
  std::vector<long double> d;
  for (std::size_t k = 1; k < q.size(); ++k) d.push_back(static_cast<long double>(k) * q[k]);
  std::vector<double> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i + 1 < roots.size() && roots[i + 1] - roots[i] < 1e-6) {
      long double lo = roots[i], hi = roots[i + 1];
      long double flo = horner(d, lo);
      for (int it = 0; it < 200 && hi > lo; ++it) {
        long double mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;
        long double fm = horner(d, mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(static_cast<double>((lo + hi) / 2));
      ++i;
    } else {
      out.push_back(roots[i]);
    }
  }
  return out;
}

struct Residual {
  double f11, f21;
  double operator()(const char* element, double f12, double f13, double f22, double f23) const {
    return order_residuals(five_stage("probe", f11, f12, f13, f21, f22, f23), 6)
        .find(element)
        ->value;
  }
};

// Affine fit r = c0 + c1 u + c2 v from three evaluations.
template <class F>
std::array<double, 3> affine(F r) {
  const double c0 = r(0.0, 0.0);
  return {c0, r(1.0, 0.0) - c0, r(0.0, 1.0) - c0};
}

// Completion on branches where the closed form divides by zero. With f11, f21 fixed the
// A_1/A_2 conditions are affine ([A1,A2], [A1,[A1,[A1,A2]]]) or quadratic ([A2,[A1,A2]]) in
// (f12, f22), and the A_3 conditions are affine in (f13, f23).
std::vector<std::array<double, 4>> eliminate(const Residual& res) {
  constexpr const char* kA12 = "[A1,A2]";
  constexpr const char* kA1112 = "[A1,[A1,[A1,A2]]]";
  constexpr const char* kA212 = "[A2,[A1,A2]]";
  auto l1 = affine([&](double a, double b) { return res(kA12, a, 0, b, 0); });
  auto l2 = affine([&](double a, double b) { return res(kA1112, a, 0, b, 0); });
  auto quad = [&](double a, double b) { return res(kA212, a, 0, b, 0); };

  std::vector<std::array<double, 2>> pairs;
  const double det = l1[1] * l2[2] - l1[2] * l2[1];
  const double scale = std::hypot(l1[1], l1[2]) * std::hypot(l2[1], l2[2]);
  if (std::abs(det) > 1e-9 * scale) {
    pairs.push_back({(-l1[0] * l2[2] + l2[0] * l1[2]) / det, (-l1[1] * l2[0] + l2[1] * l1[0]) / det});
  } else {
    // dependent pair: walk the line of the better-conditioned one, then solve the quadratic
    const auto& l = std::hypot(l1[1], l1[2]) >= std::hypot(l2[1], l2[2]) ? l1 : l2;
    const double n2 = l[1] * l[1] + l[2] * l[2];
    if (n2 == 0) return {};
    const double a0 = -l[0] * l[1] / n2, b0 = -l[0] * l[2] / n2;
    const double da = -l[2] / std::sqrt(n2), db = l[1] / std::sqrt(n2);
    auto along = [&](double t) { return quad(a0 + t * da, b0 + t * db); };
    const double g0 = along(0), gp = along(1), gm = along(-1);
    const double alpha = (gp + gm) / 2 - g0, beta = (gp - gm) / 2;
    for (double t : real_roots({g0, beta, alpha})) pairs.push_back({a0 + t * da, b0 + t * db});
  }

  std::vector<std::array<double, 4>> out;
  for (const auto& [f12, f22] : pairs) {
    auto m1 = affine([&](double c, double d) { return res("[A2,A3]", f12, c, f22, d); });
    auto m2 = affine([&](double c, double d) { return res("[A1,[A1,A3]]", f12, c, f22, d); });
    const double d3 = m1[1] * m2[2] - m1[2] * m2[1];
    if (std::abs(d3) <= 1e-12 * (1 + std::abs(m1[1]) + std::abs(m1[2]))) continue;
    const double f13 = (-m1[0] * m2[2] + m2[0] * m1[2]) / d3;
    const double f23 = (-m1[1] * m2[0] + m2[1] * m1[0]) / d3;
    out.push_back({f12, f13, f22, f23});
  }
  return out;
}

}  // namespace

SixthOrderSolutions solve_6th_family(double f11) {
  if (!std::isfinite(f11)) throw std::invalid_argument("solve_6th_family: f11 not finite");
  const double tiny = 1e-9;
  SixthOrderSolutions out;
  auto accept = [&](const std::string& tag, double f21, const std::array<double, 4>& c) {
    std::ostringstream name;
    name.precision(17);
    name << "CF6:5(f11=" << f11 << "," << tag << ")";
    auto scheme = five_stage(name.str(), f11, c[0], c[1], f21, c[2], c[3]);
    const double r = order_residuals(scheme, 6).max_abs();
    if (r > 1e-10) {
      std::ostringstream msg;
      msg << tag << ": completion leaves residual " << r;
      out.diagnostics.push_back(msg.str());
      return;
    }
    out.schemes.push_back(std::move(scheme));
  };

  for (double f21 : merge_double_roots(real_roots(sixth_order_quintic(f11)), f11)) {
    std::ostringstream tag;
    tag.precision(17);
    tag << "f21=" << f21;
    const double d22 = 30 * (f11 + f21 - 1) * (f11 + f21) * (2 * f11 + f21 - 1);
    const double d12 = 6 * (1 - f11);
    double d3 = 0, f12 = 0, f22 = 0;
    if (std::abs(d22) > tiny && std::abs(d12) > tiny) {
      f22 = (1 + 5 * f11 * (f11 - 1)) / d22;
      f12 = (1 - 6 * f22 + 12 * f11 * f22 + 6 * f21 * f22) / d12;
      d3 = 30 * (f12 * (2 * f11 - 1) * (2 * f11 + f21 - 1) +
                 f22 * (1 + 8 * f11 * f11 + 2 * (f21 - 2) * f21 + (8 * f21 - 7) * f11));
    }
    if (std::abs(d3) > tiny) {
      const double f13 = ((2 * f11 - 1) * (2 * f11 + f21 - 1) - 3 * f22) / d3;
      const double f23 = (f11 + 3 * f12 + 4 * f11 * f21 + 2 * (f21 - 1) * f21 + 6 * f22 - 1) / d3;
      accept(tag.str(), f21, {f12, f13, f22, f23});
      continue;
    }
    out.diagnostics.push_back(tag.str() + ": closed-form completion singular, solved by elimination");
    auto branches = eliminate(Residual{f11, f21});
    if (branches.empty()) out.diagnostics.push_back(tag.str() + ": no completion");
    for (std::size_t b = 0; b < branches.size(); ++b)
      accept(tag.str() + (branches.size() > 1 ? "#" + std::to_string(b + 1) : ""), f21, branches[b]);
  }
  return out;
}

}  // namespace cfet::magnus
