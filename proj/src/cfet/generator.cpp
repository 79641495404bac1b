#include "cfet/generator.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cfet {

void Generator::apply(double t, const Vector& x, Vector& y) const {
  const Sample s = sample(t);
  const double w = 1.0;
  apply(std::span<const Sample>(&s, 1), std::span<const double>(&w, 1), x, y);
}

Matrix Generator::dense(double t) const {
  const Sample s = sample(t);
  const double w = 1.0;
  return dense(std::span<const Sample>(&s, 1), std::span<const double>(&w, 1));
}

Matrix Generator::dense(std::span<const Sample> samples, std::span<const double> weights) const {
  const int n = dimension();
  if (n > kDenseGuard)
    throw std::invalid_argument("dense generator: dimension " + std::to_string(n) +
                                " exceeds the dense guard");
  Matrix m(n, n);
  Vector e = Vector::Zero(n), col(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply(samples, weights, e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

std::optional<Bounds> Generator::spectral_bounds(std::span<const Sample> samples,
                                                 std::span<const double> weights) const {
  double lo = 0.0, hi = 0.0;
  for (std::size_t m = 0; m < samples.size(); ++m) {
    if (weights[m] == 0.0) continue;
    auto b = spectral_bounds(samples[m]);
    if (!b) return std::nullopt;
    if (weights[m] > 0) {
      lo += weights[m] * b->first;
      hi += weights[m] * b->second;
    } else {
      lo += weights[m] * b->second;
      hi += weights[m] * b->first;
    }
  }
  return Bounds{lo, hi};
}

AffineGenerator::AffineGenerator(std::vector<SparseMatrix> terms, Coefficients coefficients,
                                 bool skew_hermitian, BoundsFn bounds)
    : terms_(std::move(terms)),
      coefficients_(std::move(coefficients)),
      skew_(skew_hermitian),
      bounds_(std::move(bounds)) {
  if (terms_.empty()) throw std::invalid_argument("AffineGenerator needs at least one term");
  dimension_ = static_cast<int>(terms_.front().rows());
  for (const auto& a : terms_)
    if (a.rows() != dimension_ || a.cols() != dimension_)
      throw std::invalid_argument("AffineGenerator: terms differ in dimension");
}

Sample AffineGenerator::sample(double t) const {
  Sample s{t, coefficients_(t)};
  if (s.coefficients.size() != terms_.size())
    throw std::invalid_argument("AffineGenerator: coefficient count does not match terms");
  return s;
}

void AffineGenerator::apply(std::span<const Sample> samples, std::span<const double> weights,
                            const Vector& x, Vector& y) const {
  y.setZero(dimension_);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    Complex c = 0.0;
    for (std::size_t m = 0; m < samples.size(); ++m) c += weights[m] * samples[m].coefficients[k];
    if (c != 0.0) y.noalias() += c * (terms_[k] * x);
  }
}

std::optional<Bounds> AffineGenerator::spectral_bounds(const Sample& s) const {
  if (!bounds_) return std::nullopt;
  return bounds_(s);
}

Bounds gershgorin_bounds(const std::vector<SparseMatrix>& terms,
                         const std::vector<Complex>& coefficients) {
  const Complex i(0.0, 1.0);
  SparseMatrix h = i * coefficients[0] * terms[0];
  for (std::size_t k = 1; k < terms.size(); ++k) h += i * coefficients[k] * terms[k];
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int r = 0; r < h.outerSize(); ++r) {
    double center = 0.0, radius = 0.0;
    for (SparseMatrix::InnerIterator it(h, r); it; ++it) {
      if (it.col() == r)
        center = it.value().real();
      else
        radius += std::abs(it.value());
    }
    lo = std::min(lo, center - radius);
    hi = std::max(hi, center + radius);
  }
  return {lo, hi};
}

Sample CountingGenerator::sample(double t) const {
  ++count_;
  return inner_->sample(t);
}

}  // namespace cfet
