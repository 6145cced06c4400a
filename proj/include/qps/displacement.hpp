#pragma once

#include "qps/common.hpp"
#include "qps/operators.hpp"

namespace qps {

// Dimensionless displacement parameter of D(P,Q) = exp(i(P x - Q p)/hbar):
//   D(P,Q) = exp(lambda a+ - conj(lambda) a),
//   lambda = (Q sigma_p + i P sigma_x) / hbar.
complex displacement_lambda(double P, double Q, const PhysicsConfig& cfg);

// Fock-basis matrix of D(lambda) from the associated-Laguerre closed form,
//   <m|D|n> = sqrt(n!/m!) lambda^{m-n} e^{-|lambda|^2/2} L_n^{(m-n)}(|lambda|^2)
// (m >= n; lower triangle by the conjugate relation). Factorial ratios are
// accumulated as products of 1/sqrt(k), so no factorial is ever formed.
Matrix displacement_matrix_lambda(int dim, complex lambda);

// D(P,Q) at the configured cutoff. Throws when |lambda|^2 is too large for
// the cutoff to hold the displaced support.
Matrix displacement_matrix(double P, double Q, const PhysicsConfig& cfg);

// Basis-change matrix B(r) = exp[(r/2)(a+^2 - a^2)] mapping the Fock basis to
// the Fock basis of the rescaled ladder a_s = cosh(r) a - sinh(r) a+ with
// r = ln(s / sigma). Built column-by-column with the parity-conserving
// two-term recurrence.
Matrix squeeze_matrix(int dim, double r);

}  // namespace qps
