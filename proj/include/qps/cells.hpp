#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qps/grid.hpp"
#include "qps/operators.hpp"

namespace qps {

// Rectangular phase-space domain with measure bounded below by hbar/2.
struct Cell {
  double x_lo, x_hi;
  double p_lo, p_hi;
  std::string id;

  double measure() const { return (x_hi - x_lo) * (p_hi - p_lo); }
  void validate(double hbar) const;
};

// Finite family of interior-disjoint cells tiling a coverage window.
struct CellPartition {
  std::vector<Cell> cells;
  Cell coverage;  // id unused

  void validate(double hbar) const;
  const Cell& find(const std::string& id) const;
};

// Uniform nx-by-np tiling of a window.
CellPartition uniform_partition(double x_lo, double x_hi, double p_lo, double p_hi,
                                int nx_cells, int np_cells, double hbar);

struct CellProbability {
  std::string id;
  double value;
  double err_bound;   // conservative boundary-attribution bound
  bool negative;      // value < -err_bound
};

// P = integral of the field over the cell, by midpoint-weighted Riemann sum
// (each node weighted by the overlap of its dual cell with the domain, so a
// partition's values always add up to the coverage-window integral).
CellProbability cell_probability(const ScalarField& field, const Cell& c);

struct PartitionProbabilities {
  std::vector<CellProbability> items;
  double sum;
  double outside_mass;  // field mass outside the coverage window
};

PartitionProbabilities partition_probabilities(const ScalarField& field,
                                               const CellPartition& part,
                                               double coverage_tol = 1e-6);

enum class Axis { x, p };

// Halves the named cell along the axis; refuses when a child would drop
// below the hbar/2 measure bound.
CellPartition refine_partition(const CellPartition& part, const std::string& cell_id,
                               Axis axis, double hbar);

// Unit-height closed indicators of the cell's coordinate and momentum sides.
struct CellIndicators {
  std::function<double(double)> X;
  std::function<double(double)> Pi;
};
CellIndicators indicator_functions(const Cell& c);

// Weyl quantization of a bounded classical observable over the grid window:
//   A_mn = sum over grid of f(x,p) W_nm(x,p) dx dp   (cross-Wigner route).
Matrix weyl_quantize(const std::function<double(double, double)>& f,
                     const PhaseGrid& grid, const PhysicsConfig& cfg);

// Weyl-quantized cell indicator via the rotated-coordinate factorization
//   A_mn = int_cell dx int dy phi_m(x + y/2) phi_n(x - y/2) h(y),
//   h(y) = (dp_cell / 2 pi hbar) e^{i p_mid y / hbar} sinc(dp_cell y / 2 hbar),
// which needs no phase-space grid and converges much faster than the generic
// route. The two routes are cross-checked in the tests.
Matrix cell_operator(const Cell& c, const PhysicsConfig& cfg,
                     int x_nodes = 257, double y_step_scale = 1.0);

// Eigenvalue range report for a quantized indicator: how far the spectrum
// leaves [0, 1] (the Weyl quantization of an indicator is not a projection).
struct OperatorRange {
  double eps_below;  // max(0, -lambda_min)
  double eps_above;  // max(0, lambda_max - 1)
};
OperatorRange indicator_operator_range(const Matrix& op);

}  // namespace qps
