#include "cfet/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cfet {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](std::string_view part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace cfet
