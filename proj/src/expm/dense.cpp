#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "cfet/expm/expm.hpp"

namespace cfet::expm {

Matrix dense_expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense_expm: matrix not square");
  if (a.rows() > kDenseGuard)
    throw std::invalid_argument("dense_expm: dimension " + std::to_string(a.rows()) +
                                " exceeds the dense guard " + std::to_string(kDenseGuard));
  if (a.rows() == 0) return a;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  if ((a + a.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
    // a = -i H with H hermitian
    const Matrix h = Complex(0.0, 1.0) * a;
    Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
    Eigen::VectorXcd phase(a.rows());
    for (int k = 0; k < a.rows(); ++k) phase[k] = std::exp(Complex(0.0, -es.eigenvalues()[k]));
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  }
  return a.exp();
}

Eigen::Matrix2cd su2_exp(double phi, const Eigen::Vector3d& n) {
  if (std::abs(n.norm() - 1.0) > 1e-12) throw std::invalid_argument("su2_exp: axis is not a unit vector");
  const Complex i(0.0, 1.0);
  const double c = std::cos(phi / 2), s = std::sin(phi / 2);
  Eigen::Matrix2cd u;
  u << c + i * s * n.z(), i * s * Complex(n.x(), -n.y()),
       i * s * Complex(n.x(), n.y()), c - i * s * n.z();
  return u;
}

}  // namespace cfet::expm
