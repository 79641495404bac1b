#include <cmath>
#include <stdexcept>

#include "cfet/stepper.hpp"

namespace cfet::stepper {

namespace {

Vector phases(const Vector& d, double t) { return (t * d).array().exp(); }

}  // namespace

InteractionPicture::InteractionPicture(Vector diagonal, std::shared_ptr<const Generator> rest)
    : d_(std::move(diagonal)), rest_(std::move(rest)) {
  if (!rest_) throw std::invalid_argument("interaction picture: missing generator");
  if (d_.size() != rest_->dimension())
    throw std::invalid_argument("interaction picture: diagonal length does not match dimension");
}

InteractionPicture::InteractionPicture(const Matrix& D, std::shared_ptr<const Generator> rest)
    : InteractionPicture(
          [&D] {
            if (D.rows() != D.cols()) throw std::invalid_argument("interaction picture: D not square");
            Matrix off = D;
            off.diagonal().setZero();
            if (off.cwiseAbs().maxCoeff() > 0)
              throw std::invalid_argument("interaction picture: D must be diagonal");
            return Vector(D.diagonal());
          }(),
          std::move(rest)) {}

void InteractionPicture::apply(std::span<const Sample> samples, std::span<const double> weights,
                               const Vector& x, Vector& y) const {
  y.setZero(dimension());
  Vector z(dimension()), bz(dimension());
  for (std::size_t m = 0; m < samples.size(); ++m) {
    if (weights[m] == 0.0) continue;
    const Vector ph = phases(d_, samples[m].time);
    z = ph.cwiseProduct(x);
    rest_->apply(samples.subspan(m, 1), weights.subspan(m, 1), z, bz);
    y += bz.cwiseQuotient(ph);
  }
}

bool InteractionPicture::skew_hermitian() const {
  return rest_->skew_hermitian() && d_.real().cwiseAbs().maxCoeff() == 0.0;
}

std::optional<Bounds> InteractionPicture::spectral_bounds(const Sample& s) const {
  // unitary similarity when D is anti-hermitian
  if (d_.real().cwiseAbs().maxCoeff() != 0.0) return std::nullopt;
  return rest_->spectral_bounds(s);
}

Vector InteractionPicture::to_lab(double t, const Vector& x_interaction) const {
  return phases(d_, t).cwiseProduct(x_interaction);
}

Vector InteractionPicture::to_interaction(double t, const Vector& x_lab) const {
  return x_lab.cwiseQuotient(phases(d_, t));
}

std::shared_ptr<InteractionPicture> interaction_picture(const Generator& gen) {
  auto split = gen.split();
  if (!split) throw std::invalid_argument("interaction picture: generator has no diagonal split");
  return std::make_shared<InteractionPicture>(split->diagonal, split->rest);
}

}  // namespace cfet::stepper
