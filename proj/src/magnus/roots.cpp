#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cfet/magnus/magnus.hpp"

namespace cfet::magnus {

namespace {

using Real = long double;

Real evaluate(const std::vector<Real>& c, Real x) {
  Real v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

// Scale for deciding that a value is zero up to rounding: sum |c_k| |x|^k.
Real magnitude(const std::vector<Real>& c, Real x) {
  Real v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * std::fabs(x) + std::fabs(*it);
  return v;
}

Real bisect(const std::vector<Real>& c, Real lo, Real hi) {
  Real flo = evaluate(c, lo);
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    Real mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    Real fm = evaluate(c, mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

std::vector<Real> roots(std::vector<Real> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return {};
  if (deg == 1) return {-c[0] / c[1]};

  std::vector<Real> d(deg);
  for (int k = 1; k <= deg; ++k) d[k - 1] = k * c[k];
  std::vector<Real> crit = roots(d);

  Real bound = 0;
  for (int k = 0; k < deg; ++k) bound = std::max(bound, std::fabs(c[k] / c[deg]));
  bound += 1;

  std::vector<Real> knots{-bound};
  for (Real x : crit)
    if (x > -bound && x < bound) knots.push_back(x);
  knots.push_back(bound);

  const Real eps = 64 * std::numeric_limits<Real>::epsilon();
  std::vector<Real> out;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const Real x = knots[i];
    const Real fx = evaluate(c, x);
    // multiple root sitting on a critical point
    if (i > 0 && i + 1 < knots.size() && std::fabs(fx) <= eps * magnitude(c, x)) {
      out.push_back(x);
      continue;
    }
    if (i + 1 == knots.size()) break;
    const Real y = knots[i + 1];
    const Real fy = evaluate(c, y);
    if (std::fabs(fy) <= eps * magnitude(c, y) && i + 2 < knots.size()) continue;
    if ((fx < 0) != (fy < 0)) out.push_back(bisect(c, x, y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [&](Real a, Real b) { return std::fabs(a - b) <= eps * (1 + std::fabs(a)); }),
            out.end());
  return out;
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& coefficients) {
  std::vector<Real> c(coefficients.begin(), coefficients.end());
  for (Real x : c)
    if (!std::isfinite(static_cast<double>(x)))
      throw std::invalid_argument("real_roots: non-finite coefficient");
  std::vector<double> out;
  for (Real r : roots(c)) out.push_back(static_cast<double>(r));
  return out;
}

}  // namespace cfet::magnus
