#pragma once

#include <functional>
#include <vector>

#include "qps/common.hpp"

namespace qps {

// Single-mode state in position representation. `sampler` returns the complex
// amplitude at x; `support_radius` bounds the region where the amplitude is
// numerically nonzero (used to size quadrature windows).
struct PositionWavefunction {
  std::function<complex(double)> sampler;
  double sigma = 0.0;           // Gaussian reference length scale
  double support_radius = 0.0;  // |psi(x)| negligible for |x| > support_radius
  bool even_parity = false;

  complex operator()(double x) const { return sampler(x); }
};

// Normalized Hermite functions phi_n at length scale sigma:
//   phi_n(x) = (2 pi sigma^2)^{-1/4} h_n(xi) e^{-xi^2/2},  xi = x/(sigma sqrt2),
// with h_n the orthonormalized Hermite polynomials evaluated by the
// three-term recurrence (no factorials formed).
void hermite_column(int count, double sigma, double x, double* out);
double hermite_function(int n, double sigma, double x);

// psi_0: ground Gaussian of width sigma_x = sigma.
PositionWavefunction gaussian_ground(double sigma);

// Harmonic-oscillator excited state phi_n at scale sigma.
PositionWavefunction fock_wavefunction(int n, double sigma);

// Two-component cat state
//   psi(x) = [psi_0(x-a) + psi_0(x+a)] / sqrt(2 (1 + e^{-a^2/(2 sigma^2)})).
PositionWavefunction cat_state(double a, double sigma);

// Coherent state with <x> = 2 sigma_x Re(alpha), <p> = 2 sigma_p Im(alpha).
PositionWavefunction coherent_wavefunction(complex alpha, double sigma, double hbar);

// L2 norm computed by trapezoid quadrature over the support window.
double wavefunction_norm(const PositionWavefunction& psi, int samples = 20001);

}  // namespace qps
