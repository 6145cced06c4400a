#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qps/states.hpp"
#include "qps/wigner.hpp"

using namespace qps;

namespace {

PhysicsConfig config(int cutoff = 24) {
  PhysicsConfig cfg;
  cfg.fock_cutoff = cutoff;
  return cfg;
}

PhaseGrid sym_grid(const PhysicsConfig& cfg, double hw, int n) {
  return {-hw * cfg.sigma_x(), hw * cfg.sigma_x(), -hw * cfg.sigma_p(),
          hw * cfg.sigma_p(), n, n, cfg.hbar};
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

}  // namespace

TEST_SUITE("wigner") {

TEST_CASE("analytic Fock fields: prefactor and zero set") {
  const PhysicsConfig cfg = config();
  // grid with nodes exactly at the origin and at x = sigma_x
  const PhaseGrid g = sym_grid(cfg, 6.0, 121);
  const ScalarField w0 = wigner_fock_analytic(0, g, cfg);
  const ScalarField w1 = wigner_fock_analytic(1, g, cfg);
  const int j0 = 60, k0 = 60;  // origin
  CHECK(w0.at(j0, k0) == doctest::Approx(1.0 / (pi * cfg.hbar)).epsilon(1e-14));
  CHECK(w1.at(j0, k0) == doctest::Approx(-1.0 / (pi * cfg.hbar)).epsilon(1e-14));
  // x = sigma_x, p = 0 lies on the zero ellipse
  const int js = j0 + 10;  // 6 sigma / 60 steps = sigma/10 per step
  CHECK(g.x(js) == doctest::Approx(cfg.sigma_x()).epsilon(1e-12));
  CHECK(std::abs(w1.at(js, k0)) < 1e-13);
  // masses
  CHECK(w0.mass() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(w1.mass() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("wigner_from_weyl reproduces closed forms") {
  const PhysicsConfig cfg = config();
  const PhaseGrid g = sym_grid(cfg, 7.0, 128);
  SUBCASE("vacuum Gaussian") {
    const ScalarField w = wigner_from_weyl(fock_state(0, cfg), g, cfg);
    double dev = 0.0;
    for (int j = 0; j < g.nx; ++j)
      for (int k = 0; k < g.np; ++k)
        dev = std::max(dev,
                       std::abs(w.at(j, k) - oracles::vacuum_wigner(g.x(j), g.p(k), cfg)));
    CHECK(dev < 1e-6);
  }
  SUBCASE("Fock-1 vs closed form and the direct-integral oracle") {
    const ScalarField w = wigner_from_weyl(fock_state(1, cfg), g, cfg);
    CHECK(max_abs_diff(w, wigner_fock_analytic(1, g, cfg)) < 1e-6);
    const ScalarField wd = wigner_direct(fock_wavefunction(1, cfg.sigma), g, cfg);
    CHECK(max_abs_diff(w, wd) < 1e-6);
  }
  SUBCASE("linearity is exact to rounding") {
    const ScalarField w0 = wigner_from_weyl(fock_state(0, cfg), g, cfg);
    const ScalarField w2 = wigner_from_weyl(fock_state(2, cfg), g, cfg);
    const ScalarField wm =
        wigner_from_weyl(mix_states(fock_state(0, cfg), fock_state(2, cfg), 0.5), g, cfg);
    CHECK(max_abs_diff(wm, mix_fields(w0, w2, 0.5)) < 1e-12);
  }
}

TEST_CASE("wigner_direct closed forms") {
  const PhysicsConfig cfg = config();
  const PhaseGrid g = sym_grid(cfg, 7.0, 96);
  SUBCASE("ground Gaussian") {
    const ScalarField w = wigner_direct(gaussian_ground(cfg.sigma), g, cfg);
    double dev = 0.0;
    for (int j = 0; j < g.nx; ++j)
      for (int k = 0; k < g.np; ++k)
        dev = std::max(dev,
                       std::abs(w.at(j, k) - oracles::vacuum_wigner(g.x(j), g.p(k), cfg)));
    CHECK(dev < 1e-8);
  }
  SUBCASE("displaced Gaussian for a coherent state") {
    const complex alpha(0.9, -0.6);
    const double x0 = 2.0 * cfg.sigma_x() * alpha.real();
    const double p0 = 2.0 * cfg.sigma_p() * alpha.imag();
    const PhaseGrid gd{x0 - 6 * cfg.sigma_x(), x0 + 6 * cfg.sigma_x(),
                       p0 - 6 * cfg.sigma_p(), p0 + 6 * cfg.sigma_p(), 96, 96, cfg.hbar};
    const ScalarField w =
        wigner_direct(coherent_wavefunction(alpha, cfg.sigma, cfg.hbar), gd, cfg);
    double dev = 0.0;
    for (int j = 0; j < gd.nx; ++j)
      for (int k = 0; k < gd.np; ++k)
        dev = std::max(dev, std::abs(w.at(j, k) - oracles::vacuum_wigner(
                                                      gd.x(j) - x0, gd.p(k) - p0, cfg)));
    CHECK(dev < 1e-8);
  }
}

TEST_CASE("cat Wigner function: symmetry, fringes, closed form") {
  const PhysicsConfig cfg = config(48);
  const double a = 3.0 * cfg.sigma;
  const PhaseGrid g{-a - 7 * cfg.sigma_x(), a + 7 * cfg.sigma_x(), -7 * cfg.sigma_p(),
                    7 * cfg.sigma_p(), 161, 161, cfg.hbar};
  const ScalarField w = wigner_direct(cat_state(a, cfg.sigma), g, cfg);

  SUBCASE("matches the interference closed form") {
    double dev = 0.0;
    for (int j = 0; j < g.nx; ++j)
      for (int k = 0; k < g.np; ++k)
        dev = std::max(dev,
                       std::abs(w.at(j, k) - oracles::cat_wigner(g.x(j), g.p(k), a, cfg)));
    CHECK(dev < 1e-8);
  }
  SUBCASE("even under both reflections") {
    double dev = 0.0;
    for (int j = 0; j < g.nx; ++j)
      for (int k = 0; k < g.np; ++k)
        dev = std::max(dev, std::abs(w.at(j, k) - w.at(g.nx - 1 - j, g.np - 1 - k)));
    CHECK(dev < 1e-10);
  }
  SUBCASE("central fringe oscillates with period pi hbar / a") {
    const int j0 = (g.nx - 1) / 2;  // x = 0 column
    std::vector<double> crossings;
    for (int k = 0; k + 1 < g.np; ++k) {
      const double va = w.at(j0, k), vb = w.at(j0, k + 1);
      if (va * vb < 0.0 && std::max(std::abs(va), std::abs(vb)) > 1e-3)
        crossings.push_back(g.p(k) - va * g.dp() / (vb - va));
    }
    REQUIRE(crossings.size() >= 5);
    const double period = 2.0 * (crossings.back() - crossings.front()) /
                          static_cast<double>(crossings.size() - 1);
    CHECK(period == doctest::Approx(pi * cfg.hbar / a).epsilon(0.02));
  }
}

TEST_CASE("cross-Wigner kernels") {
  const PhysicsConfig cfg = config(12);
  const PhaseGrid g = sym_grid(cfg, 9.0, 96);
  SUBCASE("W_00 is the vacuum Wigner function") {
    const ComplexField w = cross_wigner(0, 0, g, cfg);
    double dev = 0.0, imax = 0.0;
    for (int j = 0; j < g.nx; ++j)
      for (int k = 0; k < g.np; ++k) {
        const std::size_t i = static_cast<std::size_t>(j) * g.np + k;
        dev = std::max(dev, std::abs(w.re[i] - oracles::vacuum_wigner(g.x(j), g.p(k), cfg)));
        imax = std::max(imax, std::abs(w.im[i]));
      }
    CHECK(dev < 1e-8);
    CHECK(imax < 1e-10);
  }
  SUBCASE("orthogonality integrals") {
    auto mass = [&](const ComplexField& f) {
      complex acc = 0.0;
      for (std::size_t i = 0; i < f.re.size(); ++i) acc += complex(f.re[i], f.im[i]);
      return acc * g.area_element();
    };
    CHECK(std::abs(mass(cross_wigner(0, 1, g, cfg))) < 1e-8);
    CHECK(std::abs(mass(cross_wigner(2, 2, g, cfg)) - 1.0) < 1e-8);
    CHECK(std::abs(mass(cross_wigner(1, 3, g, cfg))) < 1e-8);
  }
  SUBCASE("Hermitian symmetry W_mn = conj(W_nm)") {
    const ComplexField a = cross_wigner(1, 4, g, cfg);
    const ComplexField b = cross_wigner(4, 1, g, cfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < a.re.size(); ++i)
      dev = std::max({dev, std::abs(a.re[i] - b.re[i]), std::abs(a.im[i] + b.im[i])});
    CHECK(dev < 1e-12);
  }
  SUBCASE("assembling a state from kernels matches the state field") {
    const PhysicsConfig small = config(8);
    const PhaseGrid gs = sym_grid(small, 8.0, 64);
    const complex alpha(0.6, 0.3);
    const FockDensityMatrix rho = coherent_state(alpha, small);
    ScalarField assembled{gs, FieldKind::wigner,
                          std::vector<double>(static_cast<std::size_t>(gs.nx) * gs.np, 0.0)};
    for (int m = 0; m < rho.dim; ++m)
      for (int n = 0; n < rho.dim; ++n) {
        const ComplexField k = cross_wigner(m, n, gs, small);
        for (std::size_t i = 0; i < k.re.size(); ++i)
          assembled.values[i] +=
              (rho.entries(m, n) * complex(k.re[i], k.im[i])).real();
      }
    const ScalarField ref = wigner_from_weyl(rho, gs, small);
    CHECK(max_abs_diff(assembled, ref) < 1e-6);
  }
}

TEST_CASE("marginals") {
  const PhysicsConfig cfg = config();
  const PhaseGrid g = sym_grid(cfg, 8.0, 161);
  SUBCASE("vacuum marginal is the ground-state density") {
    const ScalarField w = wigner_from_weyl(fock_state(0, cfg), g, cfg);
    const Marginal mx = marginal_x(w);
    CHECK(mx.consistent);
    CHECK(mx.mass == doctest::Approx(1.0).epsilon(1e-6));
    double dev = 0.0;
    for (int j = 0; j < g.nx; ++j) {
      const double ref = std::norm(gaussian_ground(cfg.sigma)(g.x(j)));
      dev = std::max(dev, std::abs(mx.density[j] - ref));
    }
    CHECK(dev < 1e-6);
  }
  SUBCASE("Fock-1 marginal vanishes at the origin") {
    const ScalarField w = wigner_from_weyl(fock_state(1, cfg), g, cfg);
    const Marginal mx = marginal_x(w);
    CHECK(mx.consistent);
    CHECK(std::abs(mx.density[(g.nx - 1) / 2]) < 1e-7);
    double dev = 0.0;
    for (int j = 0; j < g.nx; ++j) {
      const double phi1 = hermite_function(1, cfg.sigma, g.x(j));
      dev = std::max(dev, std::abs(mx.density[j] - phi1 * phi1));
    }
    CHECK(dev < 1e-6);
    const Marginal mp = marginal_p(w);
    CHECK(mp.mass == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("kind guard") {
    ScalarField f{g, FieldKind::husimi, std::vector<double>(g.nx * g.np, 0.0)};
    CHECK_THROWS_AS(marginal_x(f), validation_error);
  }
}

TEST_CASE("expectation values") {
  const PhysicsConfig cfg = config();
  const PhaseGrid g = sym_grid(cfg, 9.0, 193);
  const ScalarField w1 = wigner_from_weyl(fock_state(1, cfg), g, cfg);
  CHECK(expectation(w1, [](double, double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-6));
  const double sx = cfg.sigma_x(), sp = cfg.sigma_p();
  const double r2 = expectation(w1, [&](double x, double p) {
    return x * x / (sx * sx) + p * p / (sp * sp);
  });
  CHECK(r2 == doctest::Approx(6.0).epsilon(1e-4));  // <1|x^2|1> = 3 sigma_x^2 per axis
  CHECK(std::abs(expectation(w1, [](double x, double) { return x; })) < 1e-8);
  const ExpectationReport rep =
      expectation_report(w1, [](double x, double p) { return x * x + p * p; });
  CHECK(std::abs(rep.value - 3.0 * (sx * sx + sp * sp)) < 1e-4);
  CHECK(rep.err_estimate < 1e-2);
}

TEST_CASE("error paths: grids that cannot hold the state") {
  const PhysicsConfig cfg = config(32);
  SUBCASE("aliasing window far too small") {
    const PhaseGrid tiny{-0.8, 0.8, -0.8, 0.8, 64, 64, cfg.hbar};
    CHECK_THROWS_AS(wigner_from_weyl(coherent_state(complex(3.0, 0.0), cfg), tiny, cfg),
                    tolerance_error);
  }
  SUBCASE("lattice too coarse for the characteristic decay") {
    const PhaseGrid coarse = sym_grid(cfg, 12.0, 16);
    CHECK_THROWS_AS(wigner_from_weyl(fock_state(3, cfg), coarse, cfg), tolerance_error);
  }
}

}  // TEST_SUITE
