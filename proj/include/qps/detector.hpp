#pragma once

#include <optional>

#include "qps/cells.hpp"

namespace qps {

// Absorbing-plate detector: coordinate readout is "inside the plate of
// thickness L", momentum readout is the index of the absorbed mode.
struct DetectorSpec {
  double L;
  double x0 = 0.0;  // plate occupies [x0, x0 + L]
  std::optional<int> k_min, k_max;  // mode range; auto-sized from the grid when unset
  double hbar = 1.0;

  void validate() const {
    if (!(L > 0.0)) throw validation_error("DetectorSpec: plate thickness L must be > 0");
    if (!(hbar > 0.0)) throw validation_error("DetectorSpec: hbar must be > 0");
    if (k_min && k_max && *k_min > *k_max)
      throw validation_error("DetectorSpec: empty mode range");
  }
};

struct DetectorUncertainties {
  double sigma_x;  // L / (2 sqrt 3)
  double sigma_k;  // 1 / (2 sqrt 3)
  double sigma_p;  // pi hbar / (sqrt 3 L)
  double product;  // (pi/3)(hbar/2)
};

DetectorUncertainties detector_uncertainties(const DetectorSpec& d);

// Mode spacing conventions: the bound-state ladder 2 pi hbar / L and the
// quantum-conditioned interval pi hbar / (2 L). Neither is canonical; both
// are provided plus an explicit value.
enum class ModeSpacing { bound_state, quantum_interval };
double mode_spacing_value(const DetectorSpec& d, ModeSpacing m);

// Partition of the plate strip into per-mode rectangles
//   U_k = [x0, x0+L] x [dp (k - 1/2), dp (k + 1/2)].
CellPartition detector_partition(const DetectorSpec& d, double dp_mode,
                                 int k_min, int k_max);

struct ReadoutRow {
  int k;
  double p_k;
  double P_k;
};

struct DetectorReadout {
  std::vector<ReadoutRow> rows;
  double captured_mass;
  double escaped_mass;  // field mass outside the plate strip
  double total_mass;
  double dp_mode;
  DetectorUncertainties uncertainties;
};

// Cell integration of the state's Wigner field over the detector partition,
// with explicit mass bookkeeping (captured + escaped = total).
DetectorReadout detector_readout(const FockDensityMatrix& rho, const DetectorSpec& d,
                                 const PhaseGrid& grid, const PhysicsConfig& cfg,
                                 double dp_mode);

}  // namespace qps
