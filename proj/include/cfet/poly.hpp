#pragma once

#include <algorithm>
#include <vector>

#include "cfet/rational.hpp"

namespace cfet {

// Univariate polynomial, coefficient k multiplies x^k. Trailing zeros are trimmed.
template <class S>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<S> c) : c_(std::move(c)) { trim(); }
  static Poly constant(const S& a) { return Poly(std::vector<S>{a}); }
  static Poly monomial(int k, const S& a = S(1)) {
    std::vector<S> c(k + 1, S(0));
    c[k] = a;
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<S>& coefficients() const { return c_; }
  S coefficient(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : S(0); }

  S operator()(const S& x) const {
    S acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  S at_one() const {
    S acc(0);
    for (const auto& a : c_) acc += a;
    return acc;
  }

  // Antiderivative vanishing at x = 0.
  Poly integral() const {
    if (c_.empty()) return {};
    std::vector<S> out(c_.size() + 1, S(0));
    for (std::size_t k = 0; k < c_.size(); ++k) out[k + 1] = c_[k] / S(static_cast<long>(k + 1));
    return Poly(std::move(out));
  }
  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * S(static_cast<long>(k));
    return Poly(std::move(out));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const S& a) {
    if (is_zero_scalar(a)) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= a;
    return *this;
  }
  // this += a * o, without temporaries
  void add_scaled(const Poly& o, const S& a) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += a * o.c_[k];
    trim();
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const S& s) { return a *= s; }
  friend Poly operator*(const S& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> out(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(out));
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

 private:
  static bool is_zero_scalar(const S& a) { return cfet::is_zero(a); }
  void trim() {
    while (!c_.empty() && is_zero_scalar(c_.back())) c_.pop_back();
  }
  std::vector<S> c_;
};

}  // namespace cfet
