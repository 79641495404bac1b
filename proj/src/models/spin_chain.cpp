#include <bit>
#include <cmath>
#include <stdexcept>

#include "cfet/models.hpp"

namespace cfet::models {

namespace {

const Complex I(0.0, 1.0);

std::vector<Complex> chain_coefficients(const PulseTrain& pulse, double t) {
  const Complex v = pulse_field(pulse, t);
  return {1.0, v, std::conj(v)};
}

std::optional<Bounds> chain_bounds(const SpinChainParams& p, const Sample& s) {
  const double r = p.spins * std::hypot(p.delta, std::abs(s.coefficients[1])) +
                   2.0 * std::abs(p.J) * (p.spins - 1);
  return Bounds{-r, r};
}

// Diagonal energy of a basis state: delta times (#up - #down).
double zeeman(int spins, double delta, std::uint32_t idx) {
  return delta * (spins - 2 * std::popcount(idx));
}

// Terms: -i(delta sum sigma_z + J exchange), -i sum |up><down|, -i sum |down><up|.
std::vector<SparseMatrix> chain_terms(const SpinChainParams& p) {
  const int S = p.spins;
  const int n = 1 << S;
  std::vector<Eigen::Triplet<Complex>> t0, tu, td;
  for (std::uint32_t idx = 0; idx < static_cast<std::uint32_t>(n); ++idx) {
    t0.emplace_back(idx, idx, -I * zeeman(S, p.delta, idx));
    for (int s = 0; s + 1 < S; ++s) {
      const std::uint32_t a = 1u << s, b = 1u << (s + 1);
      if (((idx & a) != 0) != ((idx & b) != 0) && p.J != 0.0)
        t0.emplace_back(idx ^ (a | b), idx, -I * 2.0 * p.J);
    }
    for (int s = 0; s < S; ++s) {
      const std::uint32_t a = 1u << s;
      if (idx & a)
        tu.emplace_back(idx ^ a, idx, -I);
      else
        td.emplace_back(idx ^ a, idx, -I);
    }
  }
  std::vector<SparseMatrix> terms(3, SparseMatrix(n, n));
  terms[0].setFromTriplets(t0.begin(), t0.end());
  terms[1].setFromTriplets(tu.begin(), tu.end());
  terms[2].setFromTriplets(td.begin(), td.end());
  return terms;
}

std::optional<Split> chain_split(const SpinChainParams& p, Assembly assembly);

class SparseChain : public AffineGenerator {
 public:
  explicit SparseChain(const SpinChainParams& p)
      : AffineGenerator(
            chain_terms(p), [pulse = p.pulse](double t) { return chain_coefficients(pulse, t); },
            true, [p](const Sample& s) { return chain_bounds(p, s); }),
        p_(p) {}
  std::optional<Split> split() const override { return chain_split(p_, Assembly::Sparse); }

 private:
  SpinChainParams p_;
};

class MatrixFreeChain : public Generator {
 public:
  explicit MatrixFreeChain(const SpinChainParams& p) : p_(p), n_(1 << p.spins) {}

  int dimension() const override { return n_; }
  Sample sample(double t) const override { return {t, chain_coefficients(p_.pulse, t)}; }
  bool skew_hermitian() const override { return true; }
  std::optional<Bounds> spectral_bounds(const Sample& s) const override {
    return chain_bounds(p_, s);
  }
  std::optional<Split> split() const override { return chain_split(p_, Assembly::MatrixFree); }
  using Generator::apply;
  using Generator::spectral_bounds;

  void apply(std::span<const Sample> samples, std::span<const double> weights, const Vector& x,
             Vector& y) const override {
    Complex c0 = 0.0, cu = 0.0, cd = 0.0;
    for (std::size_t m = 0; m < samples.size(); ++m) {
      c0 += weights[m] * samples[m].coefficients[0];
      cu += weights[m] * samples[m].coefficients[1];
      cd += weights[m] * samples[m].coefficients[2];
    }
    c0 *= -I;
    cu *= -I;
    cd *= -I;
    const Complex cj = c0 * 2.0 * p_.J;
    const int S = p_.spins;
    y.setZero(n_);
    for (std::uint32_t idx = 0; idx < static_cast<std::uint32_t>(n_); ++idx) {
      const Complex xi = x[idx];
      if (xi == 0.0) continue;
      y[idx] += c0 * zeeman(S, p_.delta, idx) * xi;
      if (p_.J != 0.0)
        for (int s = 0; s + 1 < S; ++s) {
          const std::uint32_t a = 1u << s, b = 1u << (s + 1);
          if (((idx & a) != 0) != ((idx & b) != 0)) y[idx ^ (a | b)] += cj * xi;
        }
      for (int s = 0; s < S; ++s) {
        const std::uint32_t a = 1u << s;
        y[idx ^ a] += ((idx & a) ? cu : cd) * xi;
      }
    }
  }

 private:
  SpinChainParams p_;
  int n_;
};

// D = -i delta sum sigma_z; the rest is the same chain with delta = 0.
std::optional<Split> chain_split(const SpinChainParams& p, Assembly assembly) {
  const int n = 1 << p.spins;
  Vector d(n);
  for (std::uint32_t idx = 0; idx < static_cast<std::uint32_t>(n); ++idx)
    d[idx] = -I * zeeman(p.spins, p.delta, idx);
  SpinChainParams rest = p;
  rest.delta = 0.0;
  return Split{d, spin_chain(rest, assembly)};
}

}  // namespace

Complex pulse_field(const PulseTrain& pulse, double t) {
  Complex v = 0.0;
  for (double tk : pulse.centers) {
    const double s = t - tk;
    v += pulse.V * std::exp(-2.0 * I * pulse.omega * s) / std::cosh(s / pulse.tau);
  }
  return v;
}

std::shared_ptr<const Generator> spin_chain(const SpinChainParams& p, Assembly assembly) {
  if (p.spins < 1) throw std::invalid_argument("spin chain: need at least one spin");
  if (p.spins > kSpinGuard)
    throw std::invalid_argument("spin chain: " + std::to_string(p.spins) +
                                " spins exceed the memory guard of " + std::to_string(kSpinGuard));
  if (!(p.pulse.tau > 0)) throw std::invalid_argument("spin chain: pulse tau must be positive");
  if (!std::isfinite(p.delta) || !std::isfinite(p.J) || !std::isfinite(p.pulse.V) ||
      !std::isfinite(p.pulse.omega))
    throw std::invalid_argument("spin chain: parameters must be finite");
  const bool sparse = assembly == Assembly::Sparse ||
                      (assembly == Assembly::Auto && p.spins <= kSparseSpinLimit);
  if (!sparse) return std::make_shared<MatrixFreeChain>(p);
  return std::make_shared<SparseChain>(p);
}

Vector all_down(int spins) {
  if (spins < 1 || spins > kSpinGuard) throw std::invalid_argument("all_down: bad spin count");
  Vector v = Vector::Zero(1 << spins);
  v[(1 << spins) - 1] = 1.0;
  return v;
}

double sigma_z_bar(const Vector& state, int spins) {
  if (state.size() != (1 << spins))
    throw std::invalid_argument("sigma_z_bar: state length does not match 2^S");
  double acc = 0.0;
  for (std::uint32_t idx = 0; idx < static_cast<std::uint32_t>(state.size()); ++idx)
    acc += std::norm(state[idx]) * (spins - 2 * std::popcount(idx));
  return acc / spins / state.squaredNorm();
}

}  // namespace cfet::models
