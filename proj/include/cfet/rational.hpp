#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>

namespace cfet {

// GMP keeps mpq_class canonical after every arithmetic operation.
using Rational = mpq_class;

// Accepts "p", "p/q", "-p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// Canonicalized p/q (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <class S>
S scalar_from(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>)
    return q;
  else
    return q.get_d();
}

template <class S>
bool is_zero(const S& x) {
  if constexpr (std::is_same_v<S, Rational>)
    return sgn(x) == 0;
  else
    return x == 0.0;
}

}  // namespace cfet
