#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "cfet/lie/lie_element.hpp"
#include "cfet/poly.hpp"

namespace cfet::magnus {

// Lie series whose coefficients are piecewise polynomials in time. Time runs over
// `pieces` consecutive unit intervals; on interval j the coefficient is a polynomial in the
// local variable u in [0,1]. One piece is the plain x = t/dt case.
template <class S>
class LieSeries {
 public:
  using Coeff = std::vector<Poly<S>>;

  LieSeries(lie::BasisPtr basis, int pieces) : basis_(std::move(basis)), pieces_(pieces) {
    if (pieces_ < 1) throw std::invalid_argument("Lie series needs at least one piece");
  }

  const lie::BasisPtr& basis_ptr() const { return basis_; }
  const lie::HallBasis& basis() const { return *basis_; }
  int pieces() const { return pieces_; }
  const std::map<int, Coeff>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void set(int element, Coeff c) {
    c.resize(pieces_);
    terms_[element] = std::move(c);
  }

  void add_scaled(const LieSeries& o, const S& a) {
    for (const auto& [k, c] : o.terms_) {
      auto& dst = terms_[k];
      dst.resize(pieces_);
      for (int j = 0; j < pieces_; ++j) dst[j].add_scaled(c[j], a);
      if (all_zero(dst)) terms_.erase(k);
    }
  }

  // Cumulative antiderivative from t = 0, continuous across pieces.
  LieSeries integral() const {
    LieSeries out(basis_, pieces_);
    for (const auto& [k, c] : terms_) {
      Coeff q(pieces_);
      S carry(0);
      for (int j = 0; j < pieces_; ++j) {
        q[j] = c[j].integral() + Poly<S>::constant(carry);
        carry = q[j].at_one();
      }
      if (!all_zero(q)) out.terms_.emplace(k, std::move(q));
    }
    return out;
  }

  // Value at the end of the last piece.
  lie::LieElement<S> at_end() const {
    lie::LieElement<S> out(basis_);
    for (const auto& [k, c] : terms_) out.add(k, c.back().at_one());
    return out;
  }

  // Value at local time u of piece j.
  lie::LieElement<S> at(int piece, const S& u) const {
    lie::LieElement<S> out(basis_);
    for (const auto& [k, c] : terms_) out.add(k, c.at(piece)(u));
    return out;
  }

  // Lie bracket, keeping only terms of degree <= max_degree.
  friend LieSeries bracket(const LieSeries& a, const LieSeries& b, int max_degree) {
    const auto& basis = a.basis();
    LieSeries out(a.basis_, a.pieces_);
    for (const auto& [i, ci] : a.terms_) {
      const int di = basis.degree(i);
      for (const auto& [j, cj] : b.terms_) {
        if (i == j || di + basis.degree(j) > max_degree) continue;
        auto terms = basis.bracket(i, j);
        if (terms.empty()) continue;
        Coeff prod(a.pieces_);
        for (int p = 0; p < a.pieces_; ++p) prod[p] = ci[p] * cj[p];
        for (const auto& t : terms) {
          auto& dst = out.terms_[t.element];
          dst.resize(a.pieces_);
          const S coef(t.coefficient);
          for (int p = 0; p < a.pieces_; ++p) dst[p].add_scaled(prod[p], coef);
        }
      }
    }
    for (auto it = out.terms_.begin(); it != out.terms_.end();)
      it = all_zero(it->second) ? out.terms_.erase(it) : std::next(it);
    return out;
  }

 private:
  static bool all_zero(const Coeff& c) {
    for (const auto& p : c)
      if (!p.is_zero()) return false;
    return true;
  }

  lie::BasisPtr basis_;
  int pieces_;
  std::map<int, Coeff> terms_;
};

// Magnus recursion for dx/dt = A(t) x with A given as a Lie series (its time derivative
// integrates to Omega_1). Returns Omega_1..Omega_D as functions of time, where Omega_n collects
// the n-fold nested commutators:
//   dOmega_n/dt = - sum_{m=1}^{n-1} 1/(m+1)! sum_{n_1+..+n_m+k=n} [Omega_{n_1},[..,[Omega_{n_m}, dOmega_k/dt]..]]
template <class S>
std::vector<LieSeries<S>> magnus_recursion(const LieSeries<S>& generator, int max_degree) {
  const int D = max_degree;
  std::vector<LieSeries<S>> omega, omega_dot;
  omega.reserve(D);
  omega_dot.reserve(D);
  // nested[m][k]: sum over n_1+..+n_m + k' = k of [Omega_{n_1},[..,[Omega_{n_m}, dOmega_{k'}]]]
  std::vector<std::vector<LieSeries<S>>> nested;
  const LieSeries<S> zero(generator.basis_ptr(), generator.pieces());
  for (int n = 1; n <= D; ++n) {
    // nested[m] holds index k = 1..D at position k-1.
    if (n == 1) {
      omega_dot.push_back(generator);
      nested.assign(D, std::vector<LieSeries<S>>(D, zero));
      nested[0][0] = generator;
      omega.push_back(generator.integral());
      continue;
    }
    LieSeries<S> dot(generator.basis_ptr(), generator.pieces());
    S factorial(1);
    for (int m = 1; m <= n - 1; ++m) {
      factorial *= S(m + 1);
      LieSeries<S> acc(generator.basis_ptr(), generator.pieces());
      for (int j = 1; j <= n - m; ++j) {
        const auto& inner = nested[m - 1][n - j - 1];
        if (inner.empty() || omega[j - 1].empty()) continue;
        acc.add_scaled(bracket(omega[j - 1], inner, D), S(1));
      }
      nested[m][n - 1] = acc;
      dot.add_scaled(acc, S(-1) / factorial);
    }
    nested[0][n - 1] = dot;
    omega.push_back(dot.integral());
    omega_dot.push_back(std::move(dot));
  }
  return omega;
}

}  // namespace cfet::magnus
