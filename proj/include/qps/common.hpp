#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qps {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Error taxonomy mirrors the CLI exit codes: validation failures (bad or
// refused inputs), numerical-tolerance failures, and I/O failures.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class validation_error : public error {
 public:
  using error::error;
};

class tolerance_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

// Units and truncation policy shared by every operation.
//
// `sigma` is the oscillator length scale: sigma_x = sigma and
// sigma_p = hbar / (2 sigma), so sigma_x * sigma_p = hbar / 2 (minimum
// uncertainty pairing). The ladder operator is
//   a = x / (2 sigma_x) + i p / (2 sigma_p),
// which makes [a, a+] = 1 and <a> dimensionless.
struct PhysicsConfig {
  double hbar = 1.0;
  double sigma = 0.7071067811865475244;  // 1/sqrt(2): sigma_x = sigma_p
  int fock_cutoff = 32;
  double tol_trace = 1e-9;

  double sigma_x() const { return sigma; }
  double sigma_p() const { return hbar / (2.0 * sigma); }

  void validate() const {
    if (!(hbar > 0.0)) throw validation_error("PhysicsConfig: hbar must be > 0");
    if (!(sigma > 0.0)) throw validation_error("PhysicsConfig: sigma must be > 0");
    if (fock_cutoff < 2) throw validation_error("PhysicsConfig: fock_cutoff must be >= 2");
    if (!(tol_trace > 0.0)) throw validation_error("PhysicsConfig: tol_trace must be > 0");
  }
};

}  // namespace qps
