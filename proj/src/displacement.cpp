#include "qps/displacement.hpp"

#include <cmath>
#include <string>

namespace qps {

complex displacement_lambda(double P, double Q, const PhysicsConfig& cfg) {
  return complex(Q * cfg.sigma_p(), P * cfg.sigma_x()) / cfg.hbar;
}

Matrix displacement_matrix_lambda(int dim, complex lambda) {
  if (dim < 1) throw validation_error("displacement_matrix: dim must be >= 1");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw validation_error("displacement_matrix: lambda must be finite");
  const double u = std::norm(lambda);
  if (u > 0.5 * dim) {
    throw tolerance_error(
        "displacement_matrix: |lambda|^2 = " + std::to_string(u) +
        " too large for cutoff " + std::to_string(dim) +
        "; need fock_cutoff >= " + std::to_string(static_cast<int>(std::ceil(4.0 * u + 16.0))));
  }
  const double e = std::exp(-0.5 * u);
  Matrix D(dim, dim);
  // walk diagonals m = n + d; the lower triangle follows from
  // <m|D|n> = (-1)^{n-m} conj(<n|D|m>).
  for (int d = 0; d < dim; ++d) {
    // pref_n = lambda^d * sqrt(n! / (n+d)!)
    complex pref = 1.0;
    for (int j = 1; j <= d; ++j) pref *= lambda / std::sqrt(static_cast<double>(j));
    double lnm1 = 0.0, ln = 1.0;  // L_{-1}^{(d)}, L_0^{(d)}
    for (int n = 0; n + d < dim; ++n) {
      if (n > 0) {
        const double k = n - 1.0;
        const double lnp1 = ((2.0 * k + 1.0 + d - u) * ln - (k + d) * lnm1) / (k + 1.0);
        lnm1 = ln;
        ln = lnp1;
        // sqrt(n!/(n+d)!) -> sqrt((n)!/(n+d)!) step: multiply by sqrt(n/(n+d))
        pref *= std::sqrt(static_cast<double>(n) / static_cast<double>(n + d));
      }
      const complex val = e * pref * ln;
      D(n + d, n) = val;
      if (d > 0) D(n, n + d) = (d % 2 == 0 ? 1.0 : -1.0) * std::conj(val);
    }
  }
  return D;
}

Matrix displacement_matrix(double P, double Q, const PhysicsConfig& cfg) {
  cfg.validate();
  return displacement_matrix_lambda(cfg.fock_cutoff, displacement_lambda(P, Q, cfg));
}

Matrix squeeze_matrix(int dim, double r) {
  if (dim < 1) throw validation_error("squeeze_matrix: dim must be >= 1");
  Matrix S = Matrix::Zero(dim, dim);
  const double th = std::tanh(r);
  const double sech = 1.0 / std::cosh(r);
  std::vector<double> sq(dim);
  for (int i = 0; i < dim; ++i) sq[i] = std::sqrt(static_cast<double>(i));
  S(0, 0) = std::sqrt(sech);
  for (int m = 2; m < dim; m += 2) S(m, 0) = (sq[m - 1] / sq[m]) * th * S(m - 2, 0);
  for (int n = 1; n < dim; ++n) {
    for (int m = (n % 2); m < dim; m += 2) {
      complex t1 = 0.0, t2 = 0.0;
      if (n >= 2) t1 = (sq[n - 1] / sq[n]) * (-th) * S(m, n - 2);
      if (m >= 1) t2 = (sq[m] / sq[n]) * sech * S(m - 1, n - 1);
      S(m, n) = t1 + t2;
    }
  }
  return S;
}

}  // namespace qps
