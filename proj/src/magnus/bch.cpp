#include <algorithm>
#include <stdexcept>

#include "cfet/magnus/magnus.hpp"

namespace cfet::magnus {

// The product e^{X_1}...e^{X_s} is the exact propagator of a piecewise-constant generator
// that equals X_s on the first unit interval and X_1 on the last.
template <class S>
LieElement<S> bch_compose(const std::vector<LieElement<S>>& exponents, int N) {
  if (exponents.empty()) throw std::invalid_argument("bch_compose: no exponents");
  const BasisPtr& basis = exponents.front().basis_ptr();
  for (const auto& x : exponents) exponents.front().check(x);
  const int cap = std::min(basis->max_degree(), N + 1);
  if (exponents.size() == 1) return exponents.front().truncate(cap);

  const int s = static_cast<int>(exponents.size());
  LieSeries<S> a(basis, s);
  std::map<int, std::vector<Poly<S>>> coeffs;
  for (int j = 0; j < s; ++j) {
    for (const auto& [k, c] : exponents[s - 1 - j].terms()) {
      if (basis->degree(k) > cap) continue;
      auto& v = coeffs[k];
      v.resize(s);
      v[j] = Poly<S>::constant(c);
    }
  }
  for (auto& [k, v] : coeffs) a.set(k, std::move(v));

  LieElement<S> out(basis);
  for (const auto& omega_n : magnus_recursion(a, cap)) out += omega_n.at_end();
  return out;
}

template <class S>
std::vector<LieElement<S>> stage_exponents(const CfetScheme& scheme, const BasisPtr& basis) {
  std::vector<LieElement<S>> out;
  for (int i = 1; i <= scheme.stages(); ++i) {
    LieElement<S> x(basis);
    for (int n = 1; n <= scheme.columns(); ++n) {
      const auto& f = scheme.f(i, n);
      if (f.value == 0.0) continue;
      auto idx = basis->generator_index(n);
      if (!idx)
        throw std::invalid_argument("scheme '" + scheme.name() + "' uses A" + std::to_string(n) +
                                    " outside the basis");
      if constexpr (std::is_same_v<S, Rational>) {
        if (!f.exact) throw std::invalid_argument("scheme '" + scheme.name() + "' is not exact");
        x.add(*idx, *f.exact);
      } else {
        x.add(*idx, f.value);
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

template LieElement<Rational> bch_compose(const std::vector<LieElement<Rational>>&, int);
template LieElement<double> bch_compose(const std::vector<LieElement<double>>&, int);
template std::vector<LieElement<Rational>> stage_exponents(const CfetScheme&, const BasisPtr&);
template std::vector<LieElement<double>> stage_exponents(const CfetScheme&, const BasisPtr&);

}  // namespace cfet::magnus
