#include <cmath>
#include <stdexcept>

#include "cfet/models.hpp"

namespace cfet::models {

namespace {

const Complex I(0.0, 1.0);

SparseMatrix single(int n, int r, int c, Complex v) {
  SparseMatrix m(n, n);
  m.insert(r, c) = v;
  m.makeCompressed();
  return m;
}

class TwoLevel : public AffineGenerator {
 public:
  explicit TwoLevel(const TwoLevelParams& p)
      : AffineGenerator(terms(p), coefficients(p), true,
                        [p](const Sample& s) -> std::optional<Bounds> {
                          const double r = std::hypot(p.delta, std::abs(s.coefficients[1]));
                          return Bounds{-r, r};
                        }),
        p_(p) {}

  std::optional<Split> split() const override {
    Vector d(2);
    d << -I * p_.delta, I * p_.delta;
    std::vector<SparseMatrix> off{single(2, 0, 1, -I), single(2, 1, 0, -I)};
    const TwoLevelParams p = p_;
    auto rest = std::make_shared<AffineGenerator>(
        std::move(off),
        [p](double t) -> std::vector<Complex> {
          return {p.V * std::exp(-2.0 * I * p.omega * t), p.V * std::exp(2.0 * I * p.omega * t)};
        },
        true, [](const Sample& s) -> std::optional<Bounds> {
          const double r = std::abs(s.coefficients[0]);
          return Bounds{-r, r};
        });
    return Split{d, rest};
  }

 private:
  static std::vector<SparseMatrix> terms(const TwoLevelParams& p) {
    SparseMatrix z(2, 2);
    z.insert(0, 0) = -I * p.delta;
    z.insert(1, 1) = I * p.delta;
    z.makeCompressed();
    return {z, single(2, 0, 1, -I), single(2, 1, 0, -I)};
  }
  static Coefficients coefficients(const TwoLevelParams& p) {
    return [p](double t) -> std::vector<Complex> {
      return {1.0, p.V * std::exp(-2.0 * I * p.omega * t), p.V * std::exp(2.0 * I * p.omega * t)};
    };
  }
  TwoLevelParams p_;
};

}  // namespace

double TwoLevelParams::rabi() const { return std::hypot(delta - omega, V); }

std::shared_ptr<const Generator> two_level_generator(const TwoLevelParams& p) {
  if (!std::isfinite(p.delta) || !std::isfinite(p.V) || !std::isfinite(p.omega))
    throw std::invalid_argument("two-level parameters must be finite");
  return std::make_shared<TwoLevel>(p);
}

Matrix two_level_exact(const TwoLevelParams& p, double t) {
  const double R = p.rabi();
  const double c = std::cos(R * t);
  // sin(Rt)/R -> t as R -> 0
  const double sr = R == 0.0 ? t : std::sin(R * t) / R;
  const Complex em = std::exp(-I * p.omega * t), ep = std::exp(I * p.omega * t);
  const double d = p.delta - p.omega;
  Matrix u(2, 2);
  u(0, 0) = em * (c - I * d * sr);
  u(0, 1) = -I * p.V * em * sr;
  u(1, 0) = -I * p.V * ep * sr;
  u(1, 1) = ep * (c + I * d * sr);
  return u;
}

double two_level_transition(const TwoLevelParams& p, double t) {
  const double R = p.rabi();
  if (R == 0.0) return 0.0;
  const double s = std::sin(R * t);
  return (p.V / R) * (p.V / R) * s * s;
}

double rosen_zener_pinf(double delta, double omega, double V, double tau) {
  if (!(tau > 0)) throw std::invalid_argument("rosen_zener_pinf: tau must be positive");
  const double s = std::sin(M_PI * V * tau);
  const double c = std::cosh(M_PI * (delta - omega) * tau);
  return s * s / (c * c);
}

}  // namespace cfet::models
