#pragma once

#include <Eigen/Dense>

#include "qps/common.hpp"

namespace qps {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Ladder and quadrature matrices in the truncated Fock basis.
// x = sigma_x (a + a+), p = -i sigma_p (a - a+).

inline Matrix annihilation_matrix(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Matrix creation_matrix(int dim) { return annihilation_matrix(dim).adjoint(); }

inline Matrix number_matrix(int dim) {
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

inline Matrix position_matrix(int dim, double sigma_x) {
  const Matrix a = annihilation_matrix(dim);
  return sigma_x * (a + Matrix(a.adjoint()));
}

inline Matrix momentum_matrix(int dim, double sigma_p) {
  const Matrix a = annihilation_matrix(dim);
  return complex(0.0, -1.0) * sigma_p * (a - Matrix(a.adjoint()));
}

// Ladder operator at an arbitrary length scale s, expressed in the Fock basis
// of the configured scale: a_s = x/(2s) + i p s / hbar.
inline Matrix annihilation_at_scale(int dim, const PhysicsConfig& cfg, double s) {
  const Matrix x = position_matrix(dim, cfg.sigma_x());
  const Matrix p = momentum_matrix(dim, cfg.sigma_p());
  return x / (2.0 * s) + complex(0.0, 1.0) * (s / cfg.hbar) * p;
}

}  // namespace qps
