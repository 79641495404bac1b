#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cfet/lie/hall_basis.hpp"
#include "cfet/rational.hpp"

namespace cfet::lie {

// Sparse linear combination of Hall elements. Zero coefficients are never stored.
template <class S>
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(BasisPtr basis) : basis_(std::move(basis)) {}

  static LieElement generator(BasisPtr basis, int n, S coefficient = S(1)) {
    auto idx = basis->generator_index(n);
    if (!idx) throw std::invalid_argument("A" + std::to_string(n) + " not in basis");
    LieElement e(std::move(basis));
    e.add(*idx, coefficient);
    return e;
  }

  const BasisPtr& basis_ptr() const { return basis_; }
  const HallBasis& basis() const { return *basis_; }
  const std::map<int, S>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // Set when a bracket dropped nonzero terms above the basis degree cap.
  bool truncated() const { return truncated_; }
  void mark_truncated(bool t = true) { truncated_ = truncated_ || t; }

  S coefficient(int element) const {
    auto it = terms_.find(element);
    return it == terms_.end() ? S(0) : it->second;
  }
  S coefficient(const Commutator& c) const {
    auto idx = basis_->find(c);
    if (!idx) throw std::invalid_argument(c.str() + " is not a Hall element of this basis");
    return coefficient(*idx);
  }

  void add(int element, const S& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(element, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  LieElement& operator+=(const LieElement& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    truncated_ = truncated_ || o.truncated_;
    return *this;
  }
  LieElement& operator-=(const LieElement& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) add(k, -c);
    truncated_ = truncated_ || o.truncated_;
    return *this;
  }
  LieElement& operator*=(const S& s) {
    if (is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator-(LieElement a) { return a *= S(-1); }
  friend LieElement operator*(const S& s, LieElement a) { return a *= s; }
  friend LieElement operator*(LieElement a, const S& s) { return a *= s; }
  bool operator==(const LieElement& o) const { return terms_ == o.terms_; }

  // Keeps terms with degree <= max_degree.
  LieElement truncate(int max_degree) const {
    LieElement out(basis_);
    for (const auto& [k, c] : terms_)
      if (basis_->degree(k) <= max_degree) out.terms_.emplace(k, c);
    return out;
  }

  template <class T>
  LieElement<T> cast() const {
    LieElement<T> out(basis_);
    for (const auto& [k, c] : terms_) {
      if constexpr (std::is_same_v<S, Rational> && !std::is_same_v<T, Rational>)
        out.add(k, c.get_d());
      else
        out.add(k, T(c));
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    if constexpr (!std::is_same_v<S, Rational>) os.precision(17);
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c << "*" << basis_->str(k);
    }
    return os.str();
  }

  void check(const LieElement& o) const {
    if (!basis_ || !o.basis_) throw std::invalid_argument("Lie element without basis");
    if (basis_ != o.basis_ && !basis_->same_as(*o.basis_))
      throw std::invalid_argument("Lie elements over different Hall bases");
  }

 private:
  BasisPtr basis_;
  std::map<int, S> terms_;
  bool truncated_ = false;
};

template <class S>
LieElement<S> bracket(const LieElement<S>& a, const LieElement<S>& b) {
  a.check(b);
  const HallBasis& basis = a.basis();
  LieElement<S> out(a.basis_ptr());
  bool dropped = false;
  for (const auto& [i, ci] : a.terms()) {
    for (const auto& [j, cj] : b.terms()) {
      if (i == j) continue;
      if (basis.degree(i) + basis.degree(j) > basis.max_degree()) {
        dropped = true;
        continue;
      }
      S prod = ci * cj;
      for (const auto& t : basis.bracket(i, j)) out.add(t.element, prod * S(t.coefficient));
    }
  }
  out.mark_truncated(dropped || a.truncated() || b.truncated());
  return out;
}

// Expresses an arbitrary nested commutator in Hall coordinates.
LieElement<Rational> rewrite_to_hall(const Commutator& c, const BasisPtr& basis);

}  // namespace cfet::lie
