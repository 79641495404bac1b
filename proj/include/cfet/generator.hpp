#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cfet/types.hpp"

namespace cfet {

// Snapshot of the generator at one time. Models store whatever they need to evaluate A(t)
// later (typically the time-dependent coefficients of fixed operators).
struct Sample {
  double time = 0.0;
  std::vector<Complex> coefficients;
};

using Bounds = std::pair<double, double>;

class Generator;

// A(t) = D + B(t) with D constant diagonal.
struct Split {
  Vector diagonal;
  std::shared_ptr<const Generator> rest;
};

// Right-hand side A(t) of dx/dt = A(t) x. For Schroedinger problems A = -iH.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual int dimension() const = 0;
  virtual Sample sample(double t) const { return {t, {}}; }
  // y = sum_m w_m A(t_m) x. Must not keep references to its arguments.
  virtual void apply(std::span<const Sample> samples, std::span<const double> weights,
                     const Vector& x, Vector& y) const = 0;
  virtual bool skew_hermitian() const { return true; }
  // Interval containing the spectrum of H = iA at the sample, if the model knows one.
  virtual std::optional<Bounds> spectral_bounds(const Sample&) const { return std::nullopt; }
  virtual std::optional<Split> split() const { return std::nullopt; }

  void apply(double t, const Vector& x, Vector& y) const;
  // Dense A(t); dimension must be within kDenseGuard.
  Matrix dense(double t) const;
  Matrix dense(std::span<const Sample> samples, std::span<const double> weights) const;
  // Spectrum interval of i sum_m w_m A(t_m) from the per-sample bounds (Weyl).
  std::optional<Bounds> spectral_bounds(std::span<const Sample> samples,
                                        std::span<const double> weights) const;
};

// A(t) = sum_k c_k(t) A_k with fixed sparse A_k. Samples store c_k(t); a weighted sum of samples
// costs one pass over the terms.
class AffineGenerator : public Generator {
 public:
  using Coefficients = std::function<std::vector<Complex>(double)>;
  using BoundsFn = std::function<std::optional<Bounds>(const Sample&)>;

  AffineGenerator(std::vector<SparseMatrix> terms, Coefficients coefficients, bool skew_hermitian,
                  BoundsFn bounds = nullptr);

  int dimension() const override { return dimension_; }
  Sample sample(double t) const override;
  void apply(std::span<const Sample> samples, std::span<const double> weights, const Vector& x,
             Vector& y) const override;
  bool skew_hermitian() const override { return skew_; }
  std::optional<Bounds> spectral_bounds(const Sample& s) const override;

  const std::vector<SparseMatrix>& terms() const { return terms_; }
  using Generator::apply;
  using Generator::spectral_bounds;

 private:
  std::vector<SparseMatrix> terms_;
  Coefficients coefficients_;
  bool skew_;
  BoundsFn bounds_;
  int dimension_;
};

// Gershgorin interval for H = i sum_k c_k A_k.
Bounds gershgorin_bounds(const std::vector<SparseMatrix>& terms,
                         const std::vector<Complex>& coefficients);

// Counts sample() calls on a wrapped generator.
class CountingGenerator : public Generator {
 public:
  explicit CountingGenerator(std::shared_ptr<const Generator> inner) : inner_(std::move(inner)) {}
  int dimension() const override { return inner_->dimension(); }
  Sample sample(double t) const override;
  void apply(std::span<const Sample> samples, std::span<const double> weights, const Vector& x,
             Vector& y) const override {
    inner_->apply(samples, weights, x, y);
  }
  bool skew_hermitian() const override { return inner_->skew_hermitian(); }
  std::optional<Bounds> spectral_bounds(const Sample& s) const override {
    return inner_->spectral_bounds(s);
  }
  long samples_taken() const { return count_; }
  using Generator::apply;
  using Generator::spectral_bounds;

 private:
  std::shared_ptr<const Generator> inner_;
  mutable std::atomic<long> count_{0};
};

}  // namespace cfet
