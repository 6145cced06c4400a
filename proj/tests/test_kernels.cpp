#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "qps/displacement.hpp"
#include "qps/kernels.hpp"
#include "qps/states.hpp"
#include "qps/weyl.hpp"

using namespace qps;

namespace {

std::mt19937 rng(12345);

std::vector<double> random_vec(std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("cdotu matches a plain std::complex loop") {
  const auto& t = kernels::scalar_table();
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 131u}) {
    const auto ar = random_vec(n), ai = random_vec(n);
    const auto br = random_vec(n), bi = random_vec(n);
    std::complex<double> ref = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      ref += std::complex<double>(ar[i], ai[i]) * std::complex<double>(br[i], bi[i]);
    double re, im;
    t.cdotu(n, ar.data(), ai.data(), br.data(), bi.data(), &re, &im);
    CHECK(re == doctest::Approx(ref.real()).epsilon(1e-13));
    CHECK(im == doctest::Approx(ref.imag()).epsilon(1e-13));
  }
}

TEST_CASE("conv1d matches the naive zero-extended convolution") {
  const auto& t = kernels::scalar_table();
  for (std::size_t n : {1u, 5u, 17u, 100u}) {
    for (std::size_t ntaps : {1u, 3u, 9u, 31u}) {
      const auto src = random_vec(n);
      const auto taps = random_vec(ntaps);
      const std::ptrdiff_t center = ntaps / 2;
      std::vector<double> ref(n, 0.0), got(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < ntaps; ++k) {
          const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(i + k) - center;
          if (s >= 0 && s < static_cast<std::ptrdiff_t>(n))
            ref[i] += src[s] * taps[k];
        }
      t.conv1d(src.data(), n, taps.data(), ntaps, center, got.data());
      for (std::size_t i = 0; i < n; ++i)
        CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("weyl_trace agrees with the displacement-matrix trace route") {
  // random Hermitian unit-trace matrix
  PhysicsConfig cfg;
  cfg.fock_cutoff = 14;
  Matrix m = Matrix::Random(14, 14);
  m = 0.5 * (m + Matrix(m.adjoint()));
  m /= m.trace().real();
  FockDensityMatrix rho{14, cfg.hbar, m, 0.0};

  const auto tab = weyl_trace_tables(rho);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double P = d(rng), Q = d(rng);
    const complex got = weyl_characteristic(tab, P, Q, cfg);
    const complex lambda = displacement_lambda(P, Q, cfg);
    const complex ref = (displacement_matrix_lambda(14, lambda) * rho.entries).trace();
    CHECK(std::abs(got - ref) < 1e-12);
  }
}

TEST_CASE("weyl_trace returns exactly zero beyond the u cutoff") {
  PhysicsConfig cfg;
  cfg.fock_cutoff = 8;
  FockDensityMatrix rho = fock_state(3, cfg);
  const auto tab = weyl_trace_tables(rho);
  const double u = tab.u_cutoff * 2.0, eu = 0.0, lre = std::sqrt(u), lim = 0.0;
  double re = 1.0, im = 1.0;
  kernels::scalar_table().weyl_trace(tab, 1, &u, &eu, &lre, &lim, &re, &im);
  CHECK(re == 0.0);
  CHECK(im == 0.0);
}

TEST_CASE("AVX2 variants agree with the scalar reference") {
  const kernels::KernelTable* avx = kernels::avx2_table();
  if (!avx) return;  // CPU without AVX2: dispatch falls back to scalar
  const auto& ref = kernels::scalar_table();

  for (std::size_t n : {1u, 4u, 5u, 8u, 13u, 64u, 257u, 1024u}) {
    const auto ar = random_vec(n), ai = random_vec(n);
    const auto br = random_vec(n), bi = random_vec(n);
    double r0, i0, r1, i1;
    ref.cdotu(n, ar.data(), ai.data(), br.data(), bi.data(), &r0, &i0);
    avx->cdotu(n, ar.data(), ai.data(), br.data(), bi.data(), &r1, &i1);
    CHECK(r1 == doctest::Approx(r0).epsilon(1e-12));
    CHECK(i1 == doctest::Approx(i0).epsilon(1e-12));
  }

  for (std::size_t n : {3u, 64u, 255u}) {
    for (std::size_t ntaps : {1u, 7u, 41u}) {
      const auto src = random_vec(n);
      const auto taps = random_vec(ntaps);
      std::vector<double> d0(n), d1(n);
      ref.conv1d(src.data(), n, taps.data(), ntaps, ntaps / 2, d0.data());
      avx->conv1d(src.data(), n, taps.data(), ntaps, ntaps / 2, d1.data());
      for (std::size_t i = 0; i < n; ++i)
        CHECK(d1[i] == doctest::Approx(d0[i]).epsilon(1e-12));
    }
  }

  // weyl_trace on a dense random state over a batch with out-of-range lanes
  PhysicsConfig cfg;
  cfg.fock_cutoff = 12;
  Matrix m = Matrix::Random(12, 12);
  m = 0.5 * (m + Matrix(m.adjoint()));
  m /= m.trace().real();
  const auto tab = weyl_trace_tables(FockDensityMatrix{12, 1.0, m, 0.0});
  const std::size_t npts = 1001;
  std::vector<double> u(npts), eu(npts), lre(npts), lim(npts);
  std::uniform_real_distribution<double> du(0.0, 30.0), dphi(0.0, 2.0 * pi);
  for (std::size_t i = 0; i < npts; ++i) {
    u[i] = (i % 97 == 0) ? tab.u_cutoff * 1.5 : du(rng);
    eu[i] = std::exp(-0.5 * u[i]);
    const double phi = dphi(rng), r = std::sqrt(u[i]);
    lre[i] = r * std::cos(phi);
    lim[i] = r * std::sin(phi);
  }
  std::vector<double> re0(npts), im0(npts), re1(npts), im1(npts);
  ref.weyl_trace(tab, npts, u.data(), eu.data(), lre.data(), lim.data(), re0.data(),
                 im0.data());
  avx->weyl_trace(tab, npts, u.data(), eu.data(), lre.data(), lim.data(), re1.data(),
                  im1.data());
  for (std::size_t i = 0; i < npts; ++i) {
    CHECK(re1[i] == doctest::Approx(re0[i]).epsilon(1e-11));
    CHECK(im1[i] == doctest::Approx(im0[i]).epsilon(1e-11));
  }
}

TEST_CASE("backend forcing") {
  kernels::force_backend(kernels::Backend::scalar);
  CHECK(std::string(kernels::active().name) == "scalar");
  if (kernels::avx2_supported()) {
    kernels::force_backend(kernels::Backend::avx2);
    CHECK(std::string(kernels::active().name) == "avx2");
  }
}

}  // TEST_SUITE
