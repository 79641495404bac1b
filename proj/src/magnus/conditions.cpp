#include <cmath>
#include <stdexcept>

#include "cfet/magnus/magnus.hpp"

namespace cfet::magnus {

namespace {

void require_order(const CfetScheme& scheme, int N) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("order N must be even and >= 2");
  if (scheme.highest_index() > N / 2 + 1)
    throw std::invalid_argument("scheme '" + scheme.name() + "' uses A" +
                                std::to_string(scheme.highest_index()) + " beyond A" +
                                std::to_string(N / 2 + 1));
}

// tilde-Omega - Omega over a basis with generators A_1..A_{N/2+1} and degree cap D.
ResidualTable difference(const CfetScheme& scheme, int N, int D) {
  require_order(scheme, N);
  auto basis = lie::HallBasis::build(N / 2 + 1, D);
  const auto omega = magnus_over(basis).omega;
  ResidualTable table;
  table.basis = basis;
  table.exact = scheme.exact();
  if (table.exact) {
    auto diff = bch_compose(stage_exponents<Rational>(scheme, basis), D - 1) - omega;
    for (int k = 0; k < basis->size(); ++k) {
      Rational r = diff.coefficient(k);
      table.entries.push_back({k, basis->str(k), r.get_d(), r});
    }
  } else {
    auto diff = bch_compose(stage_exponents<double>(scheme, basis), D - 1) -
                omega.template cast<double>();
    for (int k = 0; k < basis->size(); ++k)
      table.entries.push_back({k, basis->str(k), diff.coefficient(k), std::nullopt});
  }
  return table;
}

}  // namespace

double ResidualTable::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, std::abs(e.value));
  return m;
}

double ResidualTable::max_abs(const std::vector<int>& elements) const {
  double m = 0.0;
  for (const auto& e : entries)
    for (int k : elements)
      if (e.element == k) m = std::max(m, std::abs(e.value));
  return m;
}

const ResidualEntry* ResidualTable::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

ResidualTable order_residuals(const CfetScheme& scheme, int N) { return difference(scheme, N, N); }

ResidualTable chi_error_term(const CfetScheme& scheme, int N, double tolerance) {
  ResidualTable full = difference(scheme, N, N + 1);
  for (const auto& e : full.entries) {
    if (full.basis->degree(e.element) > N) continue;
    bool fails = e.exact ? sgn(*e.exact) != 0 : std::abs(e.value) > tolerance;
    if (fails)
      throw std::invalid_argument("scheme '" + scheme.name() + "' violates the order-" +
                                  std::to_string(N) + " condition on " + e.name);
  }
  ResidualTable chi;
  chi.basis = full.basis;
  chi.exact = full.exact;
  for (int k : lie::filter_error_terms(*full.basis, N)) chi.entries.push_back(full.entries[k]);
  return chi;
}

}  // namespace cfet::magnus
