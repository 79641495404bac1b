#include <sstream>
#include <stdexcept>

#include "cfet/magnus/magnus.hpp"
#include "cfet/quad/legendre.hpp"

namespace cfet::magnus {

MagnusExpansion magnus_over(const BasisPtr& basis) {
  if (basis->grading() != lie::Grading::Legendre)
    throw std::invalid_argument("Magnus expansion needs a Legendre-graded basis");
  LieSeries<Rational> a(basis, 1);
  for (int n = 1; n <= basis->generators(); ++n)
    if (auto idx = basis->generator_index(n)) a.set(*idx, {quad::legendre_poly(n - 1)});

  MagnusExpansion out;
  out.basis = basis;
  out.order = basis->max_degree();
  out.terms = magnus_recursion(a, basis->max_degree());
  out.omega = LieElement<Rational>(basis);
  for (const auto& t : out.terms) out.omega += t.at_end();
  return out;
}

MagnusExpansion magnus_expand(int N) {
  if (N < 2 || N > 8 || N % 2 != 0)
    throw std::invalid_argument("magnus_expand: N must be even with 2 <= N <= 8, got " +
                                std::to_string(N));
  auto out = magnus_over(lie::HallBasis::build(N / 2 + 1, N + 1));
  out.order = N;
  return out;
}

std::string magnus_table(const LieElement<Rational>& omega) {
  std::ostringstream os;
  for (const auto& [k, c] : omega.terms()) os << omega.basis().str(k) << " -> " << c << '\n';
  return os.str();
}

}  // namespace cfet::magnus
