#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfet/rational.hpp"

namespace cfet {

// One stage coefficient f_{i,n}: exact when tabulated as a rational, decimal otherwise.
struct Coefficient {
  double value = 0.0;
  std::optional<Rational> exact;

  Coefficient() = default;
  Coefficient(const Rational& q) : value(q.get_d()), exact(q) {}  // NOLINT: implicit by design
  Coefficient(double v) : value(v) {}                              // NOLINT
  Coefficient(int v) : Coefficient(Rational(v)) {}                 // NOLINT

  bool is_exact() const { return exact.has_value(); }
  Coefficient operator-() const {
    return exact ? Coefficient(Rational(-*exact)) : Coefficient(-value);
  }
};

// Exponential product U = e^{Omega_1} ... e^{Omega_s} with Omega_i = sum_n f_{i,n} A_n.
// Applied to a vector, stage s acts first.
class CfetScheme {
 public:
  CfetScheme(std::string name, int order, std::vector<std::vector<Coefficient>> f,
             bool symmetric);

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  int stages() const { return static_cast<int>(f_.size()); }
  // Number of Legendre components n carried by the rows.
  int columns() const { return columns_; }
  bool symmetric() const { return symmetric_; }
  const std::vector<std::vector<Coefficient>>& rows() const { return f_; }

  // 1-based stage i and Legendre index n; entries past the table are zero.
  const Coefficient& f(int i, int n) const;
  double value(int i, int n) const { return f(i, n).value; }
  bool exact() const;
  // Largest n with a nonzero f_{i,n} in some stage.
  int highest_index() const;
  // Gauss points used per step: max(N/2, highest_index()).
  int quadrature_points() const;

 private:
  std::string name_;
  int order_;
  std::vector<std::vector<Coefficient>> f_;
  bool symmetric_;
  int columns_ = 0;
};

// Builds a time-symmetric scheme from its leading rows: rows ceil(s/2)+1..s are mirrored with
// f_{s-i+1,n} = (-1)^{n+1} f_{i,n}.
CfetScheme symmetric_scheme(std::string name, int order, int stages,
                            std::vector<std::vector<Coefficient>> leading_rows);

// Maximum violation of the mirror relation over all entries.
double symmetry_defect(const CfetScheme& scheme);
// sum_i f_{i,1} - 1
double sum_rule_defect(const CfetScheme& scheme);

// Structured-text scheme document (JSON): name, order, stages, symmetric, f.
std::string dump_scheme(const CfetScheme& scheme);
// Validates the sum rule (1e-12) and the symmetric flag; throws std::invalid_argument.
CfetScheme load_scheme(const std::string& document);

const std::vector<std::string>& scheme_names();
CfetScheme scheme_lookup(const std::string& name);

}  // namespace cfet
