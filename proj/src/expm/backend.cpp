#include <cmath>
#include <stdexcept>

#include "cfet/expm/expm.hpp"

namespace cfet::expm {

namespace {

Matrix assemble(const Exponent& omega, ExpmStats& stats) {
  if (omega.dense) return omega.dense();
  if (omega.dimension > kDenseGuard)
    throw std::invalid_argument("dense assembly: dimension " + std::to_string(omega.dimension) +
                                " exceeds the dense guard");
  Matrix m(omega.dimension, omega.dimension);
  Vector e = Vector::Zero(omega.dimension), col(omega.dimension);
  for (int j = 0; j < omega.dimension; ++j) {
    e[j] = 1.0;
    omega.apply(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  stats.matvecs += omega.dimension;
  return m;
}

// H x = i Omega x
Matvec hermitian_part(const Exponent& omega, int& count) {
  return [&omega, &count](const Vector& x, Vector& y) {
    omega.apply(x, y);
    y *= Complex(0.0, 1.0);
    ++count;
  };
}

int parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty())
    throw std::invalid_argument("backend '" + what + "': bad integer '" + text + "'");
  return v;
}

}  // namespace

ExpmBackend ExpmBackend::krylov(int K) {
  if (K < 2) throw std::invalid_argument("Krylov subspace size must be >= 2");
  ExpmBackend b;
  b.kind = BackendKind::Krylov;
  b.K = K;
  return b;
}

ExpmBackend ExpmBackend::chebyshev(int terms, std::optional<std::pair<double, double>> bounds) {
  if (terms < 0) throw std::invalid_argument("Chebyshev term count must be >= 0");
  if (bounds && !(bounds->first < bounds->second))
    throw std::invalid_argument("Chebyshev bounds need lambda_min < lambda_max");
  ExpmBackend b;
  b.kind = BackendKind::Chebyshev;
  b.terms = terms;
  b.bounds = bounds;
  return b;
}

ExpmBackend ExpmBackend::taylor(int terms) {
  if (terms < 1) throw std::invalid_argument("Taylor backend needs at least one term");
  ExpmBackend b;
  b.kind = BackendKind::Taylor;
  b.terms = terms;
  return b;
}

ExpmBackend ExpmBackend::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (name == "dense" && arg.empty()) return dense();
  if (name == "su2" && arg.empty()) return su2();
  if (name == "krylov") return krylov(arg.empty() ? 20 : parse_count(arg, text));
  if (name == "chebyshev") return chebyshev(arg.empty() ? 0 : parse_count(arg, text));
  if (name == "taylor" && !arg.empty()) return taylor(parse_count(arg, text));
  throw std::invalid_argument("unknown backend '" + text +
                              "' (dense, krylov:K, chebyshev[:terms], taylor:terms, su2)");
}

std::string ExpmBackend::str() const {
  switch (kind) {
    case BackendKind::Dense:
      return "dense";
    case BackendKind::Krylov:
      return "krylov:" + std::to_string(K);
    case BackendKind::Chebyshev:
      return terms > 0 ? "chebyshev:" + std::to_string(terms) : "chebyshev";
    case BackendKind::Taylor:
      return "taylor:" + std::to_string(terms);
    case BackendKind::SU2:
      return "su2";
  }
  return "?";
}

Vector ExpmBackend::apply(const Exponent& omega, const Vector& v, ExpmStats* stats) const {
  if (v.size() != omega.dimension)
    throw std::invalid_argument("expm: vector length " + std::to_string(v.size()) +
                                " does not match dimension " + std::to_string(omega.dimension));
  ExpmStats local;
  Vector out;
  switch (kind) {
    case BackendKind::Dense:
      out = dense_expm(assemble(omega, local)) * v;
      break;
    case BackendKind::Krylov: {
      if (!omega.skew_hermitian)
        throw std::invalid_argument("Krylov backend needs an anti-hermitian exponent");
      KrylovDiagnostics d;
      out = krylov_expv(hermitian_part(omega, local.matvecs), v, 1.0, K, &d, check_orthogonality);
      local.subspace = d.subspace;
      local.orthogonality = d.orthogonality;
      local.breakdown = d.breakdown;
      break;
    }
    case BackendKind::Chebyshev: {
      if (!omega.skew_hermitian)
        throw std::invalid_argument("Chebyshev backend needs an anti-hermitian exponent");
      auto b = bounds ? bounds : omega.bounds;
      if (!b) throw std::invalid_argument("Chebyshev backend needs spectral bounds from the model");
      if (b->first == b->second) {
        // scalar exponent
        out = std::exp(Complex(0.0, -b->first)) * v;
        break;
      }
      out = chebyshev_expv(hermitian_part(omega, local.matvecs), v, 1.0, b->first, b->second, terms);
      break;
    }
    case BackendKind::Taylor: {
      // series in Omega directly, valid for any exponent
      Vector term = v, next(v.size());
      out = v;
      for (int k = 1; k <= terms; ++k) {
        omega.apply(term, next);
        ++local.matvecs;
        term = next / static_cast<double>(k);
        out += term;
      }
      break;
    }
    case BackendKind::SU2: {
      if (omega.dimension != 2 || !omega.skew_hermitian)
        throw std::invalid_argument("SU2 backend needs a 2x2 anti-hermitian exponent");
      const Matrix m = assemble(omega, local);
      // m = i (a0 + a.sigma)
      const Complex i(0.0, 1.0);
      const double a0 = ((m(0, 0) + m(1, 1)) / (2.0 * i)).real();
      const Eigen::Vector3d a(((m(0, 1) + m(1, 0)) / (2.0 * i)).real(),
                              ((m(0, 1) - m(1, 0)) / 2.0).real(),
                              ((m(0, 0) - m(1, 1)) / (2.0 * i)).real());
      const double len = a.norm();
      Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
      if (len > 0) u = su2_exp(2 * len, a / len);
      out = std::exp(i * a0) * (u * v);
      break;
    }
  }
  if (stats) {
    stats->matvecs += local.matvecs;
    stats->subspace = local.subspace;
    stats->orthogonality = std::max(stats->orthogonality, local.orthogonality);
    stats->breakdown = local.breakdown;
  }
  return out;
}

}  // namespace cfet::expm
