#include "qps/smoothing.hpp"

#include <cmath>
#include <string>

#include "qps/kernels.hpp"
#include "qps/wigner.hpp"

namespace qps {

SmoothingKernel quantum_kernel(const PhysicsConfig& cfg) {
  return {cfg.sigma_x(), cfg.sigma_p()};
}

namespace {

// Discrete Gaussian taps at spacing h, truncated at 6 half-widths and
// renormalized to unit sum (the renormalization is O(1e-12) for s >= 3h and
// makes the delta-kernel limit exact).
std::vector<double> gaussian_taps(double s, double h) {
  const int radius = static_cast<int>(std::ceil(6.0 * s / h));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int t = -radius; t <= radius; ++t) {
    const double v = std::exp(-0.5 * (t * h) * (t * h) / (s * s));
    taps[t + radius] = v;
    sum += v;
  }
  for (double& v : taps) v /= sum;
  return taps;
}

}  // namespace

ScalarField gaussian_smooth(const ScalarField& field, const SmoothingKernel& k) {
  k.validate();
  field.grid.validate();
  if (field.kind != FieldKind::wigner)
    throw validation_error("gaussian_smooth: input field kind must be wigner");
  const PhaseGrid& g = field.grid;
  if (6.0 * k.sx > (g.x_max - g.x_min) || 6.0 * k.sp > (g.p_max - g.p_min))
    throw validation_error("gaussian_smooth: kernel wider than grid");

  const std::vector<double> taps_x = gaussian_taps(k.sx, g.dx());
  const std::vector<double> taps_p = gaussian_taps(k.sp, g.dp());
  const auto& ker = kernels::active();

  // p-direction first (rows are contiguous), then x via transposes
  std::vector<double> tmp(field.values.size());
  for (int j = 0; j < g.nx; ++j) {
    ker.conv1d(field.values.data() + static_cast<std::size_t>(j) * g.np, g.np,
               taps_p.data(), taps_p.size(),
               static_cast<std::ptrdiff_t>(taps_p.size() / 2),
               tmp.data() + static_cast<std::size_t>(j) * g.np);
  }
  std::vector<double> tr(field.values.size()), tr_out(field.values.size());
  for (int j = 0; j < g.nx; ++j)
    for (int kk = 0; kk < g.np; ++kk)
      tr[static_cast<std::size_t>(kk) * g.nx + j] =
          tmp[static_cast<std::size_t>(j) * g.np + kk];
  for (int kk = 0; kk < g.np; ++kk) {
    ker.conv1d(tr.data() + static_cast<std::size_t>(kk) * g.nx, g.nx, taps_x.data(),
               taps_x.size(), static_cast<std::ptrdiff_t>(taps_x.size() / 2),
               tr_out.data() + static_cast<std::size_t>(kk) * g.nx);
  }
  ScalarField out{g, FieldKind::smoothed, std::vector<double>(field.values.size())};
  for (int j = 0; j < g.nx; ++j)
    for (int kk = 0; kk < g.np; ++kk)
      out.values[static_cast<std::size_t>(j) * g.np + kk] =
          tr_out[static_cast<std::size_t>(kk) * g.nx + j];

  const double in_mass = field.mass(), out_mass = out.mass();
  if (std::abs(out_mass - in_mass) > 1e-6)
    throw tolerance_error(
        "gaussian_smooth: mass not preserved (" + std::to_string(in_mass) + " -> " +
        std::to_string(out_mass) + "); grid margins too small for this kernel");
  return out;
}

ScalarField husimi(const FockDensityMatrix& rho, const PhaseGrid& grid,
                   const PhysicsConfig& cfg) {
  grid.validate();
  const int N = rho.dim;
  const double sx = cfg.sigma_x(), sp = cfg.sigma_p();
  const auto& ker = kernels::active();

  // split row-major copy of rho for the kernel reductions
  std::vector<double> rho_re(static_cast<std::size_t>(N) * N),
      rho_im(static_cast<std::size_t>(N) * N);
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) {
      rho_re[static_cast<std::size_t>(m) * N + n] = rho.entries(m, n).real();
      rho_im[static_cast<std::size_t>(m) * N + n] = rho.entries(m, n).imag();
    }

  // e^{-|alpha|^2} factors are separable in (x, p)
  std::vector<double> gx(grid.nx), gp(grid.np);
  for (int j = 0; j < grid.nx; ++j) {
    const double ar = grid.x(j) / (2.0 * sx);
    gx[j] = std::exp(-ar * ar);
  }
  for (int k = 0; k < grid.np; ++k) {
    const double ai = grid.p(k) / (2.0 * sp);
    gp[k] = std::exp(-ai * ai);
  }

  ScalarField out{grid, FieldKind::husimi,
                  std::vector<double>(static_cast<std::size_t>(grid.nx) * grid.np)};
  std::vector<double> t_re(N), t_im(N);
  const double norm = 1.0 / (2.0 * pi * cfg.hbar);
  for (int j = 0; j < grid.nx; ++j) {
    const double ar = grid.x(j) / (2.0 * sx);
    for (int k = 0; k < grid.np; ++k) {
      const double ai = grid.p(k) / (2.0 * sp);
      // t_n = alpha^n / sqrt(n!)
      t_re[0] = 1.0;
      t_im[0] = 0.0;
      for (int n = 1; n < N; ++n) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(n));
        t_re[n] = (t_re[n - 1] * ar - t_im[n - 1] * ai) * inv;
        t_im[n] = (t_re[n - 1] * ai + t_im[n - 1] * ar) * inv;
      }
      // t+ rho t
      double q = 0.0;
      for (int m = 0; m < N; ++m) {
        double sr, si;
        ker.cdotu(N, rho_re.data() + static_cast<std::size_t>(m) * N,
                  rho_im.data() + static_cast<std::size_t>(m) * N, t_re.data(),
                  t_im.data(), &sr, &si);
        q += t_re[m] * sr + t_im[m] * si;  // Re(conj(t_m) * s_m)
      }
      out.at(j, k) = q * gx[j] * gp[k] * norm;
    }
  }
  out.validate();
  return out;
}

HusimiIdentityReport verify_husimi_identity(const FockDensityMatrix& rho,
                                            const PhaseGrid& grid,
                                            const PhysicsConfig& cfg,
                                            const SmoothingKernel& kernel,
                                            double tol) {
  const ScalarField w = wigner_from_weyl(rho, grid, cfg);
  const ScalarField s = gaussian_smooth(w, kernel);
  const ScalarField q = husimi(rho, grid, cfg);
  double diff = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i)
    diff = std::max(diff, std::abs(s.values[i] - q.values[i]));
  const bool quantum = kernel.quantum(cfg.hbar);
  return {diff, s.min_value(), kernel, quantum, quantum && diff <= tol, tol};
}

HusimiIdentityReport verify_husimi_identity(const FockDensityMatrix& rho,
                                            const PhaseGrid& grid,
                                            const PhysicsConfig& cfg) {
  return verify_husimi_identity(rho, grid, cfg, quantum_kernel(cfg));
}

}  // namespace qps
