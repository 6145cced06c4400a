#pragma once

#include <optional>

#include "qps/grid.hpp"
#include "qps/states.hpp"

namespace qps {

// State deviations from ladder-operator moments.
using StateDeviations = QuadratureMoments;
StateDeviations state_deviations(const FockDensityMatrix& rho, const PhysicsConfig& cfg);

// Mean excitation <a+ a> of the ladder at scale sigma, evaluated on the state
// displaced to zero means (operatorially: Tr[a+ a rho] - |Tr[a rho]|^2).
double mean_excitation(const FockDensityMatrix& rho, double sigma,
                       const PhysicsConfig& cfg);

struct ExcitationMinimum {
  double sigma_opt;
  double n_bar_min;
};

// Golden-section minimization of mean_excitation over log sigma, bracket
// [sigma_x_state/10, 10 sigma_x_state] expanded geometrically on failure.
ExcitationMinimum minimize_excitation(const FockDensityMatrix& rho,
                                      const PhysicsConfig& cfg);

struct DisplacedExpansion {
  Vector coefficients;  // psi_n against the displaced Fock basis D(alpha) B(r) |n>
  double deficit;       // 1 - sum |psi_n|^2
};

// Expansion of a pure state on the displaced Fock basis at (alpha, sigma).
DisplacedExpansion displaced_expansion(const Vector& state, complex alpha, double sigma,
                                       const PhysicsConfig& cfg,
                                       double deficit_tol = 1e-6);

struct NegativityMeasures {
  double min_value;
  double volume;  // integral of (|W| - W)/2
};

NegativityMeasures negativity_measures(const ScalarField& field);

struct NonclassicalityReport {
  double sigma_x_state, sigma_p_state;
  double mean_x, mean_p;
  double sigma_opt;
  double n_bar_min;
  double negativity_min;
  double negativity_volume;
  std::optional<double> psi0_sq;      // pure states only
  std::optional<double> distance_sq;  // 1 - |psi0|^2
  bool classical;                     // n_bar_min < 1e-6
};

// Full ladder: moments, minimized excitation (cross-checked against
// sigma_x sigma_p / hbar - 1/2), Wigner negativity, and for pure states the
// displaced-basis overlap with the best quasiclassical approximation.
NonclassicalityReport analyze_nonclassicality(const FockDensityMatrix& rho,
                                              const PhysicsConfig& cfg,
                                              std::optional<PhaseGrid> grid = {});

}  // namespace qps
