#pragma once

#include <functional>

#include "qps/grid.hpp"
#include "qps/wavefunction.hpp"

namespace qps {

// Wigner field by Fourier inversion of the Weyl function over the conjugate
// (P,Q) lattice of the grid. Checks that the characteristic function has
// decayed at the lattice edge and that the imaginary residue of the inversion
// is below tolerance before dropping it.
ScalarField wigner_from_weyl(const FockDensityMatrix& rho, const PhaseGrid& grid,
                             const PhysicsConfig& cfg);

// Independent route: position-representation integral
//   W(x,p) = (1/2 pi hbar) int psi*(x+y/2) psi(x-y/2) e^{i p y / hbar} dy.
ScalarField wigner_direct(const PositionWavefunction& psi, const PhaseGrid& grid,
                          const PhysicsConfig& cfg);

// Closed form W_n = ((-1)^n / pi hbar) L_n(2u) e^{-u},
// u = x^2/(2 sigma_x^2) + p^2/(2 sigma_p^2).
ScalarField wigner_fock_analytic(int n, const PhaseGrid& grid, const PhysicsConfig& cfg);

// Wigner kernel of |m><n|, normalized so that W_rho = sum rho_mn W_mn and
// the kernels integrate to delta_mn.
ComplexField cross_wigner(int m, int n, const PhaseGrid& grid, const PhysicsConfig& cfg);

struct Marginal {
  std::vector<double> coord;
  std::vector<double> density;
  double min_value = 0.0;
  double mass = 0.0;
  bool consistent = true;  // false when negativity exceeds tolerance
};

Marginal marginal_x(const ScalarField& field);
Marginal marginal_p(const ScalarField& field);

// Classical-like average: Riemann sum of f(x,p) * field * dx * dp.
double expectation(const ScalarField& field, const std::function<double(double, double)>& f);

struct ExpectationReport {
  double value;
  double err_estimate;  // Richardson estimate from a stride-2 subsample
};
ExpectationReport expectation_report(const ScalarField& field,
                                     const std::function<double(double, double)>& f);

}  // namespace qps
