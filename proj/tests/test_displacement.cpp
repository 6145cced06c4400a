#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qps/displacement.hpp"
#include "qps/states.hpp"
#include "qps/weyl.hpp"

using namespace qps;

TEST_SUITE("displacement") {

TEST_CASE("D(0,0) is the identity") {
  PhysicsConfig cfg;
  cfg.fock_cutoff = 12;
  const Matrix D = displacement_matrix(0.0, 0.0, cfg);
  CHECK((D - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vacuum matrix element <0|D|0> = e^{-|lambda|^2/2}") {
  PhysicsConfig cfg;
  cfg.fock_cutoff = 24;
  for (double P : {-1.3, 0.4}) {
    for (double Q : {0.9, -0.2}) {
      const Matrix D = displacement_matrix(P, Q, cfg);
      const double u = (P * P * cfg.sigma_x() * cfg.sigma_x() +
                        Q * Q * cfg.sigma_p() * cfg.sigma_p()) /
                       (cfg.hbar * cfg.hbar);
      CHECK(std::abs(D(0, 0) - std::exp(-0.5 * u)) < 1e-14);
    }
  }
}

TEST_CASE("closed form agrees with the matrix-exponential oracle") {
  // exact entries vs expm(lambda a+ - conj(lambda) a) at a larger cutoff
  const int big = 96, small = 24;
  const complex lambda(0.8, -1.1);
  const Matrix a = annihilation_matrix(big);
  const Matrix gen = lambda * Matrix(a.adjoint()) - std::conj(lambda) * a;
  const Matrix Dref = oracles::expm(gen);
  const Matrix D = displacement_matrix_lambda(small, lambda);
  double dev = 0.0;
  for (int m = 0; m < small; ++m)
    for (int n = 0; n < small; ++n)
      dev = std::max(dev, std::abs(D(m, n) - Dref(m, n)));
  CHECK(dev < 1e-9);
}

TEST_CASE("unitarity on the safe sub-block at N = 64, |lambda| = 1") {
  const Matrix D = displacement_matrix_lambda(64, complex(std::sqrt(0.5), std::sqrt(0.5)));
  const Matrix G = Matrix(D.adjoint()) * D;
  double dev = 0.0;
  for (int m = 0; m < 20; ++m)
    for (int n = 0; n < 20; ++n)
      dev = std::max(dev, std::abs(G(m, n) - (m == n ? 1.0 : 0.0)));
  CHECK(dev < 1e-8);
}

TEST_CASE("truncation guard for |lambda|^2 over the cutoff") {
  CHECK_THROWS_AS(displacement_matrix_lambda(8, complex(3.0, 0.0)), tolerance_error);
}

TEST_CASE("squeeze matrix properties") {
  const int dim = 48;
  const double r = 0.55;
  const Matrix B = squeeze_matrix(dim, r);

  SUBCASE("matches the matrix-exponential oracle") {
    const int big = 120;
    const Matrix a = annihilation_matrix(big);
    const Matrix gen = 0.5 * r * (Matrix(a.adjoint() * a.adjoint()) - Matrix(a * a));
    const Matrix Bref = oracles::expm(gen);
    double dev = 0.0;
    for (int m = 0; m < 24; ++m)
      for (int n = 0; n < 24; ++n)
        dev = std::max(dev, std::abs(B(m, n) - Bref(m, n)));
    CHECK(dev < 1e-9);
  }
  SUBCASE("first column is the squeezed vacuum") {
    for (int n = 0; n < 16; ++n)
      CHECK(B(n, 0).real() ==
            doctest::Approx(oracles::squeezed_vacuum_coefficient(n, r)).epsilon(1e-10));
  }
  SUBCASE("rescaled ladder annihilates the transformed vacuum") {
    const Matrix a = annihilation_matrix(dim);
    const Vector v = (std::cosh(r) * a - std::sinh(r) * Matrix(a.adjoint())) * B.col(0);
    CHECK(v.norm() < 1e-10);
  }
  SUBCASE("columns orthonormal on the safe block") {
    const Matrix G = Matrix(B.adjoint()) * B;
    double dev = 0.0;
    for (int m = 0; m < 16; ++m)
      for (int n = 0; n < 16; ++n)
        dev = std::max(dev, std::abs(G(m, n) - (m == n ? 1.0 : 0.0)));
    CHECK(dev < 1e-10);
  }
}

TEST_CASE("weyl function values") {
  PhysicsConfig cfg;
  cfg.fock_cutoff = 32;
  const double hbar = cfg.hbar;
  SUBCASE("any state at the origin gives Tr(rho)/(2 pi hbar) exactly") {
    const FockDensityMatrix rho = mix_states(fock_state(2, cfg), fock_state(5, cfg), 0.3);
    const complex w = weyl_function(rho, 0.0, 0.0, cfg);
    CHECK(w.real() == doctest::Approx(1.0 / (2.0 * pi * hbar)).epsilon(1e-15));
    CHECK(w.imag() == 0.0);
  }
  SUBCASE("vacuum closed form") {
    const FockDensityMatrix rho = fock_state(0, cfg);
    for (double P : {0.3, -1.1}) {
      for (double Q : {0.0, 0.8}) {
        const double u = (P * P * cfg.sigma_x() * cfg.sigma_x() +
                          Q * Q * cfg.sigma_p() * cfg.sigma_p()) /
                         (hbar * hbar);
        const complex w = weyl_function(rho, P, Q, cfg);
        CHECK(std::abs(w - std::exp(-0.5 * u) / (2.0 * pi * hbar)) < 1e-14);
      }
    }
  }
  SUBCASE("Fock-1 Laguerre closed form vs the numeric trace") {
    const FockDensityMatrix rho = fock_state(1, cfg);
    for (double P : {0.2, 1.4}) {
      const double Q = -0.6;
      const double u = (P * P * cfg.sigma_x() * cfg.sigma_x() +
                        Q * Q * cfg.sigma_p() * cfg.sigma_p()) /
                       (hbar * hbar);
      const complex w = weyl_function(rho, P, Q, cfg);
      CHECK(std::abs(w - (1.0 - u) * std::exp(-0.5 * u) / (2.0 * pi * hbar)) < 1e-14);
      // independent route: trace against the displacement matrix
      const Matrix D = displacement_matrix(P, Q, cfg);
      const complex ref = (D * rho.entries).trace() / (2.0 * pi * hbar);
      CHECK(std::abs(w - ref) < 1e-13);
    }
  }
  SUBCASE("characteristic function is bounded by 1") {
    const FockDensityMatrix rho = fock_state(3, cfg);
    for (double P = -8.0; P <= 8.0; P += 0.37)
      CHECK(std::abs(weyl_characteristic(rho, P, 0.7, cfg)) <= 1.0 + 1e-12);
  }
}

}  // TEST_SUITE
