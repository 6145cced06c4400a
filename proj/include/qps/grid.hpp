#pragma once

#include <string>
#include <vector>

#include "qps/common.hpp"
#include "qps/states.hpp"

namespace qps {

// Uniform rectangular sampling lattice on phase space.
struct PhaseGrid {
  double x_min, x_max;
  double p_min, p_max;
  int nx, np;
  double hbar = 1.0;

  void validate() const;
  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double x(int j) const { return x_min + j * dx(); }
  double p(int k) const { return p_min + k * dp(); }
  double area_element() const { return dx() * dp(); }

  bool operator==(const PhaseGrid& o) const {
    return x_min == o.x_min && x_max == o.x_max && p_min == o.p_min &&
           p_max == o.p_max && nx == o.nx && np == o.np && hbar == o.hbar;
  }
};

enum class FieldKind { wigner, husimi, smoothed };

std::string to_string(FieldKind k);
FieldKind field_kind_from_string(const std::string& s);

// Real field sampled on a PhaseGrid, row-major in x: values[j * np + k].
struct ScalarField {
  PhaseGrid grid;
  FieldKind kind = FieldKind::wigner;
  std::vector<double> values;

  double& at(int j, int k) { return values[static_cast<std::size_t>(j) * grid.np + k]; }
  double at(int j, int k) const { return values[static_cast<std::size_t>(j) * grid.np + k]; }

  double mass() const;       // Riemann sum * dx * dp
  double min_value() const;
  double max_value() const;
  void validate() const;     // finiteness + husimi non-negativity
};

// Complex field with split storage (kernel-friendly layout).
struct ComplexField {
  PhaseGrid grid;
  std::vector<double> re, im;
};

// Grid sized from the state's occupation and moments: centered on the mean,
// half-extent (6 + 2 sqrt(n_eff)) sigma + 2 sigma_state per axis.
PhaseGrid auto_grid(const FockDensityMatrix& rho, const PhysicsConfig& cfg,
                    int nx = 256, int np = 256, double pad = 0.0);

// State-independent sizing from the cutoff alone, centered at the origin.
PhaseGrid auto_grid_for_cutoff(const PhysicsConfig& cfg, int nx = 256, int np = 256);

ScalarField mix_fields(const ScalarField& a, const ScalarField& b, double w);

}  // namespace qps
