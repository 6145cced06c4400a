#include "qps/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "qps/displacement.hpp"

namespace qps {

void FockDensityMatrix::validate(double tol_trace) const {
  if (dim < 1 || entries.rows() != dim || entries.cols() != dim)
    throw validation_error("FockDensityMatrix: inconsistent dimensions");
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    throw validation_error("FockDensityMatrix: not Hermitian (max dev " +
                           std::to_string(herm) + ")");
  const double tr = trace_real();
  if (std::abs(tr - 1.0) > tol_trace)
    throw tolerance_error("FockDensityMatrix: trace " + std::to_string(tr) +
                          " deviates from 1 beyond tol " + std::to_string(tol_trace));
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues().minCoeff();
  if (lam_min < -tol_trace)
    throw tolerance_error("FockDensityMatrix: smallest eigenvalue " +
                          std::to_string(lam_min) + " below -tol");
}

double FockDensityMatrix::trace_real() const { return entries.trace().real(); }

int FockDensityMatrix::effective_max_n(double occupancy_tol) const {
  int n_eff = 0;
  for (int n = 0; n < dim; ++n)
    if (entries(n, n).real() > occupancy_tol) n_eff = n;
  return n_eff;
}

FockDensityMatrix fock_state(int n, const PhysicsConfig& cfg) {
  cfg.validate();
  if (n < 0 || n >= cfg.fock_cutoff)
    throw validation_error("fock_state: n = " + std::to_string(n) +
                           " outside [0, " + std::to_string(cfg.fock_cutoff - 1) + "]");
  FockDensityMatrix rho;
  rho.dim = cfg.fock_cutoff;
  rho.hbar = cfg.hbar;
  rho.entries = Matrix::Zero(rho.dim, rho.dim);
  rho.entries(n, n) = 1.0;
  return rho;
}

Vector coherent_coefficients(complex alpha, int dim, double* tail_out) {
  Vector c(dim);
  const double u = std::norm(alpha);
  const double e = std::exp(-0.5 * u);
  complex term = e;
  double weight = 0.0;
  for (int n = 0; n < dim; ++n) {
    c(n) = term;
    weight += std::norm(term);
    term *= alpha / std::sqrt(n + 1.0);
  }
  if (tail_out) *tail_out = std::max(0.0, 1.0 - weight);
  return c;
}

namespace {

// Smallest cutoff whose Poisson tail beyond it stays below tol.
int required_coherent_cutoff(double mean, double tol) {
  double term = std::exp(-mean);
  double cum = term;
  int n = 0;
  while (1.0 - cum > tol && n < 100000) {
    ++n;
    term *= mean / n;
    cum += term;
  }
  return n + 1;
}

}  // namespace

FockDensityMatrix coherent_state(const CoherentAmplitude& amp, const PhysicsConfig& cfg) {
  cfg.validate();
  if (!(amp.sigma > 0.0)) throw validation_error("coherent_state: sigma must be > 0");
  const int dim = cfg.fock_cutoff;
  const double r = std::log(amp.sigma / cfg.sigma);
  Vector c;
  double tail = 0.0;
  if (std::abs(r) < 1e-14) {
    c = coherent_coefficients(amp.alpha, dim, &tail);
    if (tail > cfg.tol_trace) {
      throw tolerance_error(
          "coherent_state: truncation weight " + std::to_string(tail) +
          " exceeds tol_trace; need fock_cutoff >= " +
          std::to_string(required_coherent_cutoff(std::norm(amp.alpha), cfg.tol_trace)));
    }
  } else {
    // |alpha, s> = D(mu) B(r) |0> in the configured basis, with
    // mu = alpha cosh r + conj(alpha) sinh r.
    const complex mu = amp.alpha * std::cosh(r) + std::conj(amp.alpha) * std::sinh(r);
    c = displacement_matrix_lambda(dim, mu) * squeeze_matrix(dim, r).col(0);
    tail = std::max(0.0, 1.0 - c.squaredNorm());
    if (tail > cfg.tol_trace) {
      throw tolerance_error("coherent_state: scale-mismatch truncation weight " +
                            std::to_string(tail) +
                            " exceeds tol_trace; increase fock_cutoff");
    }
  }
  c /= c.norm();
  return density_from_coefficients(c, cfg, tail);
}

FockDensityMatrix coherent_state(complex alpha, const PhysicsConfig& cfg) {
  return coherent_state(CoherentAmplitude{alpha, cfg.sigma}, cfg);
}

Vector wavefunction_coefficients(const PositionWavefunction& psi,
                                 const PhysicsConfig& cfg, double* deficit_out) {
  cfg.validate();
  const int dim = cfg.fock_cutoff;
  const double herm_radius =
      (9.0 + 2.0 * std::sqrt(static_cast<double>(dim))) * cfg.sigma;
  const double R = std::max(psi.support_radius, herm_radius);
  const double step = std::min(psi.sigma, cfg.sigma) / 40.0;
  const int samples = 2 * static_cast<int>(std::ceil(R / step)) + 1;
  const double dx = 2.0 * R / (samples - 1);

  Vector c = Vector::Zero(dim);
  std::vector<double> col(dim);
  for (int i = 0; i < samples; ++i) {
    const double x = -R + i * dx;
    const double w = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
    const complex amp = psi(x);
    if (amp == complex(0.0, 0.0)) continue;
    hermite_column(dim, cfg.sigma, x, col.data());
    for (int n = 0; n < dim; ++n) c(n) += w * col[n] * amp;
  }
  c *= dx;
  const double deficit = 1.0 - c.squaredNorm();
  if (deficit_out) *deficit_out = deficit;
  if (deficit > cfg.tol_trace) {
    throw tolerance_error("wavefunction_to_density: completeness deficit " +
                          std::to_string(deficit) + " exceeds tol_trace " +
                          std::to_string(cfg.tol_trace) +
                          "; increase fock_cutoff beyond " + std::to_string(dim));
  }
  c /= c.norm();
  return c;
}

FockDensityMatrix wavefunction_to_density(const PositionWavefunction& psi,
                                          const PhysicsConfig& cfg) {
  double deficit = 0.0;
  const Vector c = wavefunction_coefficients(psi, cfg, &deficit);
  return density_from_coefficients(c, cfg, std::max(0.0, deficit));
}

FockDensityMatrix density_from_coefficients(const Vector& c, const PhysicsConfig& cfg,
                                            double tail_weight) {
  FockDensityMatrix rho;
  rho.dim = static_cast<int>(c.size());
  rho.hbar = cfg.hbar;
  rho.entries = c * c.adjoint();
  rho.tail_weight = tail_weight;
  return rho;
}

FockDensityMatrix mix_states(const FockDensityMatrix& a, const FockDensityMatrix& b,
                             double w) {
  if (a.dim != b.dim) throw validation_error("mix_states: dimension mismatch");
  if (w < 0.0 || w > 1.0) throw validation_error("mix_states: weight outside [0,1]");
  FockDensityMatrix rho;
  rho.dim = a.dim;
  rho.hbar = a.hbar;
  rho.entries = w * a.entries + (1.0 - w) * b.entries;
  rho.tail_weight = std::max(a.tail_weight, b.tail_weight);
  return rho;
}

FockDensityMatrix displace_density(const FockDensityMatrix& rho, complex lambda,
                                   const PhysicsConfig& cfg) {
  const Matrix D = displacement_matrix_lambda(rho.dim, lambda);
  FockDensityMatrix out;
  out.dim = rho.dim;
  out.hbar = rho.hbar;
  Matrix m = D * rho.entries * D.adjoint();
  out.entries = 0.5 * (m + Matrix(m.adjoint()));  // re-hermitize rounding residue
  const double tr = out.entries.trace().real();
  out.tail_weight = rho.tail_weight + std::max(0.0, 1.0 - tr);
  if (std::abs(tr - 1.0) > cfg.tol_trace)
    throw tolerance_error("displace_density: displaced trace deficit " +
                          std::to_string(1.0 - tr) +
                          " exceeds tol_trace; increase fock_cutoff");
  out.entries /= tr;
  return out;
}

QuadratureMoments quadrature_moments(const FockDensityMatrix& rho,
                                     const PhysicsConfig& cfg) {
  const Matrix x = position_matrix(rho.dim, cfg.sigma_x());
  const Matrix p = momentum_matrix(rho.dim, cfg.sigma_p());
  const double mx = (x * rho.entries).trace().real();
  const double mp = (p * rho.entries).trace().real();
  const double x2 = (x * x * rho.entries).trace().real();
  const double p2 = (p * p * rho.entries).trace().real();
  return {mx, mp, x2 - mx * mx, p2 - mp * mp};
}

}  // namespace qps
