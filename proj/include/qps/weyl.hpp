#pragma once

#include "qps/common.hpp"
#include "qps/kernels.hpp"
#include "qps/states.hpp"

namespace qps {

// Sample of the Weyl (characteristic) function.
struct WeylPoint {
  double P, Q;
  complex value;
};

// Per-state tables for the displacement-trace kernel.
kernels::WeylDiagonals weyl_trace_tables(const FockDensityMatrix& rho);

// chi(P,Q) = Tr[D(P,Q) rho]; bounded by 1, equal to Tr(rho) at the origin.
complex weyl_characteristic(const FockDensityMatrix& rho, double P, double Q,
                            const PhysicsConfig& cfg);
complex weyl_characteristic(const kernels::WeylDiagonals& tab, double P, double Q,
                            const PhysicsConfig& cfg);

// Weyl function W~(P,Q) = chi(P,Q) / (2 pi hbar).
complex weyl_function(const FockDensityMatrix& rho, double P, double Q,
                      const PhysicsConfig& cfg);

}  // namespace qps
