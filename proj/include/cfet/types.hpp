#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace cfet {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// Dense assembly limit for step_matrix, dense_expm and similar.
inline constexpr int kDenseGuard = 4096;

// Non-convergence, divergence, or any other numerical breakdown (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfet
