#include "qps/detector.hpp"

#include <cmath>

#include "qps/wigner.hpp"

namespace qps {

DetectorUncertainties detector_uncertainties(const DetectorSpec& d) {
  d.validate();
  const double s3 = std::sqrt(3.0);
  return {d.L / (2.0 * s3), 1.0 / (2.0 * s3), pi * d.hbar / (s3 * d.L),
          (pi / 3.0) * (d.hbar / 2.0)};
}

double mode_spacing_value(const DetectorSpec& d, ModeSpacing m) {
  d.validate();
  switch (m) {
    case ModeSpacing::bound_state: return 2.0 * pi * d.hbar / d.L;
    case ModeSpacing::quantum_interval: return pi * d.hbar / (2.0 * d.L);
  }
  throw validation_error("mode_spacing_value: unknown mode");
}

CellPartition detector_partition(const DetectorSpec& d, double dp_mode,
                                 int k_min, int k_max) {
  d.validate();
  if (!(dp_mode > 0.0))
    throw validation_error("detector_partition: mode spacing must be > 0");
  if (k_min > k_max) throw validation_error("detector_partition: empty mode range");
  if (d.L * dp_mode < 0.5 * d.hbar - 1e-12)
    throw validation_error(
        "detector_partition: cell measure L*dp = " + std::to_string(d.L * dp_mode) +
        " below the quantum bound hbar/2 = " + std::to_string(0.5 * d.hbar));
  CellPartition part;
  part.coverage = {d.x0, d.x0 + d.L, dp_mode * (k_min - 0.5), dp_mode * (k_max + 0.5),
                   "plate"};
  for (int k = k_min; k <= k_max; ++k) {
    part.cells.push_back({d.x0, d.x0 + d.L, dp_mode * (k - 0.5), dp_mode * (k + 0.5),
                          "k=" + std::to_string(k)});
  }
  part.validate(d.hbar);
  return part;
}

DetectorReadout detector_readout(const FockDensityMatrix& rho, const DetectorSpec& d,
                                 const PhaseGrid& grid, const PhysicsConfig& cfg,
                                 double dp_mode) {
  d.validate();
  grid.validate();
  if (d.x0 < grid.x_min || d.x0 + d.L > grid.x_max)
    throw validation_error("detector_readout: plate strip not covered by the grid");

  // auto mode range: all cells that fit inside the grid's momentum extent
  const int k_lo = d.k_min ? *d.k_min
                           : static_cast<int>(std::ceil(grid.p_min / dp_mode + 0.5));
  const int k_hi = d.k_max ? *d.k_max
                           : static_cast<int>(std::floor(grid.p_max / dp_mode - 0.5));
  if (k_lo > k_hi)
    throw validation_error("detector_readout: no detector mode fits the grid");

  const ScalarField field = wigner_from_weyl(rho, grid, cfg);
  const CellPartition part = detector_partition(d, dp_mode, k_lo, k_hi);

  DetectorReadout out;
  out.dp_mode = dp_mode;
  out.uncertainties = detector_uncertainties(d);
  out.total_mass = field.mass();
  out.captured_mass = 0.0;
  for (const Cell& c : part.cells) {
    const CellProbability p = cell_probability(field, c);
    const int k = k_lo + static_cast<int>(&c - part.cells.data());
    out.rows.push_back({k, dp_mode * k, p.value});
    out.captured_mass += p.value;
  }
  out.escaped_mass = out.total_mass - out.captured_mass;
  return out;
}

}  // namespace qps
