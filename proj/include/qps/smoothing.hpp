#pragma once

#include "qps/grid.hpp"

namespace qps {

// Separable Gaussian smoothing kernel
//   K(dx, dp) = exp(-dx^2/(2 sx^2) - dp^2/(2 sp^2)) / (2 pi sx sp)
// with unit mass; sx * sp is the effective smoothing measure.
struct SmoothingKernel {
  double sx, sp;

  double measure() const { return sx * sp; }
  bool quantum(double hbar) const { return std::abs(measure() - 0.5 * hbar) < 1e-12; }
  void validate() const {
    if (!(sx > 0.0) || !(sp > 0.0))
      throw validation_error("SmoothingKernel: half-widths must be > 0");
  }
};

SmoothingKernel quantum_kernel(const PhysicsConfig& cfg);  // (sigma_x, sigma_p)

// Convolution with the unit-mass kernel; discrete taps are renormalized so
// total mass is preserved exactly up to edge truncation, which is checked.
ScalarField gaussian_smooth(const ScalarField& field, const SmoothingKernel& k);

// Husimi function Q(x,p) = <alpha| rho |alpha> / (2 pi hbar) with
// alpha = x/(2 sigma_x) + i p/(2 sigma_p); unit-mass, non-negative.
ScalarField husimi(const FockDensityMatrix& rho, const PhaseGrid& grid,
                   const PhysicsConfig& cfg);

struct HusimiIdentityReport {
  double max_discrepancy;   // max |smooth(W) - Q| over the grid
  double smoothed_min;      // min of the smoothed field
  SmoothingKernel kernel;
  bool quantum;             // kernel measure == hbar/2
  bool pass;                // quantum && max_discrepancy <= tol
  double tol;
};

// Checks that Gaussian smoothing at the quantum measure reproduces the
// directly computed Husimi function.
HusimiIdentityReport verify_husimi_identity(const FockDensityMatrix& rho,
                                            const PhaseGrid& grid,
                                            const PhysicsConfig& cfg,
                                            const SmoothingKernel& kernel,
                                            double tol = 1e-6);
HusimiIdentityReport verify_husimi_identity(const FockDensityMatrix& rho,
                                            const PhaseGrid& grid,
                                            const PhysicsConfig& cfg);

}  // namespace qps
