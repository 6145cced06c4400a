#pragma once

#include <vector>

#include "qps/common.hpp"
#include "qps/operators.hpp"
#include "qps/wavefunction.hpp"

namespace qps {

// Coherent amplitude together with the ladder scale that defines it.
// Mean position is 2 sigma_x Re(alpha), mean momentum 2 sigma_p Im(alpha)
// with sigma_x = sigma, sigma_p = hbar/(2 sigma).
struct CoherentAmplitude {
  complex alpha;
  double sigma;
};

// Truncated density matrix in the Fock basis of the configured scale.
// Hermitian by construction; `tail_weight` records the weight lost to
// truncation before renormalization.
struct FockDensityMatrix {
  int dim = 0;
  double hbar = 1.0;
  Matrix entries;
  double tail_weight = 0.0;

  // Hermiticity, unit trace and positive semidefiniteness within tol.
  void validate(double tol_trace) const;
  double trace_real() const;
  // Largest n with non-negligible occupation; sizes grids and recurrences.
  int effective_max_n(double occupancy_tol = 1e-12) const;
};

FockDensityMatrix fock_state(int n, const PhysicsConfig& cfg);

// Fock coefficients of |alpha> at matched scale, after truncation at dim.
// tail_out receives the Poisson tail weight beyond the cutoff.
Vector coherent_coefficients(complex alpha, int dim, double* tail_out = nullptr);

// Coherent state of the ladder at scale amp.sigma, expressed in the
// configured basis (a squeeze + displacement when the scales differ).
FockDensityMatrix coherent_state(const CoherentAmplitude& amp, const PhysicsConfig& cfg);
FockDensityMatrix coherent_state(complex alpha, const PhysicsConfig& cfg);

// Pure-state density from a position wavefunction via Hermite-function
// overlaps c_n = integral phi_n(x) psi(x) dx at the configured scale.
FockDensityMatrix wavefunction_to_density(const PositionWavefunction& psi,
                                          const PhysicsConfig& cfg);
// The underlying coefficients (renormalized); deficit_out receives the
// completeness deficit 1 - sum |c_n|^2 before renormalization.
Vector wavefunction_coefficients(const PositionWavefunction& psi,
                                 const PhysicsConfig& cfg, double* deficit_out);

FockDensityMatrix density_from_coefficients(const Vector& c, const PhysicsConfig& cfg,
                                            double tail_weight = 0.0);

// w * a + (1-w) * b.
FockDensityMatrix mix_states(const FockDensityMatrix& a, const FockDensityMatrix& b,
                             double w);

// D(lambda) rho D(lambda)+ at the configured scale.
FockDensityMatrix displace_density(const FockDensityMatrix& rho, complex lambda,
                                   const PhysicsConfig& cfg);

// First and second moments of x and p from ladder matrices.
struct QuadratureMoments {
  double mean_x, mean_p, var_x, var_p;
  double sigma_x() const { return std::sqrt(var_x); }
  double sigma_p() const { return std::sqrt(var_p); }
};
QuadratureMoments quadrature_moments(const FockDensityMatrix& rho,
                                     const PhysicsConfig& cfg);

}  // namespace qps
