#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cfet/models.hpp"

namespace cfet::models {

namespace {

const Complex I(0.0, 1.0);

// L_k^a(x) and L_{k-1}^a(x)
std::pair<double, double> laguerre(int k, double a, double x) {
  double prev = 0.0, cur = 1.0;
  for (int j = 0; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

struct LogRule {
  std::vector<double> nodes;
  std::vector<double> log_weights;
};

// Generalized Gauss-Laguerre for x^a e^{-x}: Golub-Welsch nodes polished by Newton, weights from
// the closed form in log space.
LogRule make_rule(int m, double a) {
  Eigen::VectorXd diag(m), sub(std::max(0, m - 1));
  for (int k = 0; k < m; ++k) diag[k] = 2.0 * k + a + 1.0;
  for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(k * (k + a));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  LogRule r;
  for (int j = 0; j < m; ++j) {
    double x = es.eigenvalues()[j];
    for (int it = 0; it < 3; ++it) {
      const auto [lm, lm1] = laguerre(m, a, x);
      const double d = (m * lm - (m + a) * lm1) / x;
      if (d == 0.0) break;
      x -= lm / d;
    }
    const double lnext = laguerre(m + 1, a, x).first;
    r.nodes.push_back(x);
    r.log_weights.push_back(std::lgamma(m + a + 1.0) - std::lgamma(m + 1.0) + std::log(x) -
                            2.0 * std::log(m + 1.0) - 2.0 * std::log(std::abs(lnext)));
  }
  return r;
}

const LogRule& rule(int m, int a) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, LogRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({m, a});
  if (it == cache.end()) it = cache.emplace(std::make_pair(m, a), make_rule(m, a)).first;
  return it->second;
}

double log_norm(int n, int l) {
  return 0.5 * (3.0 * std::log(2.0 / n) + std::lgamma(n - l) - std::log(2.0 * n) -
                std::lgamma(n + l + 1.0));
}

double radial_with(int m, int n, int l, int n2, int l2) {
  const double s = 1.0 / n + 1.0 / n2;
  const int a = l + l2 + 3;
  const double log_pref = log_norm(n, l) + log_norm(n2, l2) + l * std::log(2.0 / (n * s)) +
                          l2 * std::log(2.0 / (n2 * s)) - 4.0 * std::log(s);
  const LogRule& r = rule(m, a);
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const double x = r.nodes[j];
    const double p = laguerre(n - l - 1, 2.0 * l + 1.0, 2.0 * x / (n * s)).first *
                     laguerre(n2 - l2 - 1, 2.0 * l2 + 1.0, 2.0 * x / (n2 * s)).first;
    acc += std::exp(log_pref + r.log_weights[j]) * p;
  }
  return acc;
}

void check_state(int n, int l) {
  if (n < 1 || l < 0 || l >= n) throw std::invalid_argument("hydrogen: need 1 <= n and 0 <= l < n");
}

class Hydrogen : public AffineGenerator {
 public:
  Hydrogen(std::vector<SparseMatrix> terms, HydrogenParams p)
      : AffineGenerator(terms, coefficients(p.field), true, bounds(terms)), p_(p), terms_(terms) {}

  std::optional<Split> split() const override {
    const auto basis = hydrogen_basis(p_.n_max);
    Vector d(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double n = basis[k].first;
      d[k] = -I * (-1.0 / (n * n));
    }
    const FieldParams f = p_.field;
    std::vector<SparseMatrix> dip{terms_[1]};
    auto rest = std::make_shared<AffineGenerator>(
        dip, [f](double t) -> std::vector<Complex> { return {field(f, t)}; }, true, bounds(dip));
    return Split{d, rest};
  }

 private:
  static Coefficients coefficients(const FieldParams& f) {
    return [f](double t) -> std::vector<Complex> { return {1.0, field(f, t)}; };
  }
  static BoundsFn bounds(std::vector<SparseMatrix> terms) {
    return [terms = std::move(terms)](const Sample& s) -> std::optional<Bounds> {
      return gershgorin_bounds(terms, s.coefficients);
    };
  }
  HydrogenParams p_;
  std::vector<SparseMatrix> terms_;
};

}  // namespace

double envelope(const FieldParams& f, double t) {
  const double u = t - f.t0;
  return (1.0 + f.a) / (1.0 + f.a * std::exp(-f.b * u * u));
}

double field(const FieldParams& f, double t) {
  return f.amplitude * envelope(f, t) * std::cos(f.frequency * t);
}

std::vector<std::pair<int, int>> hydrogen_basis(int n_max) {
  if (n_max < 1 || n_max > kHydrogenGuard)
    throw std::invalid_argument("hydrogen: n_max must be in [1, " +
                                std::to_string(kHydrogenGuard) + "]");
  std::vector<std::pair<int, int>> b;
  for (int n = 1; n <= n_max; ++n)
    for (int l = 0; l < n; ++l) b.emplace_back(n, l);
  return b;
}

double radial_dipole(int n, int l, int n2, int l2) {
  check_state(n, l);
  check_state(n2, l2);
  const int degree = (n - l - 1) + (n2 - l2 - 1);
  const int m = degree / 2 + 2;
  const double coarse = radial_with(m, n, l, n2, l2);
  const double fine = radial_with(2 * m, n, l, n2, l2);
  if (!std::isfinite(fine) || std::abs(fine - coarse) > 1e-10 * std::max(1.0, std::abs(fine))) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "radial dipole <%d %d|r|%d %d> not converged under node doubling (%.3e vs %.3e)",
                  n, l, n2, l2, coarse, fine);
    throw NumericalError(buf);
  }
  return fine;
}

double dipole_element(int n, int l, int n2, int l2) {
  check_state(n, l);
  check_state(n2, l2);
  double angular;
  if (l2 == l + 1)
    angular = (l + 1.0) / std::sqrt((2.0 * l + 1.0) * (2.0 * l + 3.0));
  else if (l2 == l - 1)
    angular = l / std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0));
  else
    return 0.0;
  return angular * radial_dipole(n, l, n2, l2);
}

std::shared_ptr<const Generator> hydrogen(const HydrogenParams& p) {
  const auto basis = hydrogen_basis(p.n_max);
  const int dim = static_cast<int>(basis.size());
  std::vector<Eigen::Triplet<Complex>> td, tz;
  for (int i = 0; i < dim; ++i) {
    const double n = basis[i].first;
    td.emplace_back(i, i, -I * (-1.0 / (n * n)));
    for (int j = 0; j < dim; ++j) {
      if (basis[j].second != basis[i].second + 1) continue;
      const double d = dipole_element(basis[i].first, basis[i].second, basis[j].first,
                                      basis[j].second);
      tz.emplace_back(i, j, -I * d);
      tz.emplace_back(j, i, -I * d);
    }
  }
  std::vector<SparseMatrix> terms(2, SparseMatrix(dim, dim));
  terms[0].setFromTriplets(td.begin(), td.end());
  terms[1].setFromTriplets(tz.begin(), tz.end());
  return std::make_shared<Hydrogen>(std::move(terms), p);
}

std::vector<double> shell_populations(const Vector& state, int n_max) {
  const auto basis = hydrogen_basis(n_max);
  if (state.size() != static_cast<long>(basis.size()))
    throw std::invalid_argument("shell_populations: state length does not match the basis");
  std::vector<double> p(n_max, 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) p[basis[k].first - 1] += std::norm(state[k]);
  return p;
}

std::string dipole_table_csv(int n_max) {
  const auto basis = hydrogen_basis(n_max);
  std::ostringstream os;
  os << "n,l,n2,l2,d_z\n";
  char buf[64];
  for (const auto& [n, l] : basis)
    for (const auto& [n2, l2] : basis) {
      if (std::abs(l - l2) != 1) continue;
      std::snprintf(buf, sizeof buf, "%.17g", dipole_element(n, l, n2, l2));
      os << n << ',' << l << ',' << n2 << ',' << l2 << ',' << buf << '\n';
    }
  return os.str();
}

}  // namespace cfet::models
