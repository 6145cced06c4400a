#include "qps/wigner.hpp"

#include <cmath>
#include <string>

#include "qps/displacement.hpp"
#include "qps/kernels.hpp"
#include "qps/weyl.hpp"

namespace qps {

namespace {

// phase[i] = exp(i (theta0 + i_step * dtheta)); recurrence with periodic
// exact refresh to keep rounding drift below ~1e-15.
void fill_phase_row(double theta0, double dtheta, int n, double* re, double* im) {
  const double cr = std::cos(dtheta), ci = std::sin(dtheta);
  double r = std::cos(theta0), i = std::sin(theta0);
  for (int k = 0; k < n; ++k) {
    if (k % 64 == 0) {
      const double th = theta0 + k * dtheta;
      r = std::cos(th);
      i = std::sin(th);
    }
    re[k] = r;
    im[k] = i;
    const double nr = r * cr - i * ci;
    i = r * ci + i * cr;
    r = nr;
  }
}

void check_wigner_bounds(const ScalarField& f, const char* who) {
  const double bound = 1.0 / (pi * f.grid.hbar) + 1e-8;
  const double m = std::max(std::abs(f.min_value()), std::abs(f.max_value()));
  if (m > bound)
    throw tolerance_error(std::string(who) + ": |W| = " + std::to_string(m) +
                          " exceeds 1/(pi hbar) bound");
}

}  // namespace

ScalarField wigner_from_weyl(const FockDensityMatrix& rho, const PhaseGrid& grid,
                             const PhysicsConfig& cfg) {
  grid.validate();
  const int M = grid.nx, L = grid.np;
  const double hbar = cfg.hbar;
  const double dP = 2.0 * pi * hbar / (grid.nx * grid.dx());
  const double dQ = 2.0 * pi * hbar / (grid.np * grid.dp());
  const double Pc = 0.5 * (M - 1), Qc = 0.5 * (L - 1);
  const double sx = cfg.sigma_x(), sp = cfg.sigma_p();

  const kernels::WeylDiagonals tab = weyl_trace_tables(rho);
  const auto& ker = kernels::active();

  // characteristic function on the conjugate lattice (m-major, l fastest)
  std::vector<double> uP(M), euP(M), uQ(L), euQ(L);
  for (int m = 0; m < M; ++m) {
    const double P = (m - Pc) * dP;
    uP[m] = P * P * sx * sx / (hbar * hbar);
    euP[m] = std::exp(-0.5 * uP[m]);
  }
  for (int l = 0; l < L; ++l) {
    const double Q = (l - Qc) * dQ;
    uQ[l] = Q * Q * sp * sp / (hbar * hbar);
    euQ[l] = std::exp(-0.5 * uQ[l]);
  }
  const std::size_t npts = static_cast<std::size_t>(M) * L;
  std::vector<double> u(npts), eu(npts), lre(npts), lim(npts);
  for (int m = 0; m < M; ++m) {
    const double limv = (m - Pc) * dP * sx / hbar;
    for (int l = 0; l < L; ++l) {
      const std::size_t idx = static_cast<std::size_t>(m) * L + l;
      u[idx] = uP[m] + uQ[l];
      eu[idx] = euP[m] * euQ[l];
      lre[idx] = (l - Qc) * dQ * sp / hbar;
      lim[idx] = limv;
    }
  }
  std::vector<double> chi_re(npts), chi_im(npts);
  ker.weyl_trace(tab, npts, u.data(), eu.data(), lre.data(), lim.data(),
                 chi_re.data(), chi_im.data());

  // the lattice must cover the decay of the characteristic function
  double edge = 0.0;
  for (int l = 0; l < L; ++l) {
    edge = std::max(edge, std::hypot(chi_re[l], chi_im[l]));
    const std::size_t last = static_cast<std::size_t>(M - 1) * L + l;
    edge = std::max(edge, std::hypot(chi_re[last], chi_im[last]));
  }
  for (int m = 0; m < M; ++m) {
    const std::size_t row = static_cast<std::size_t>(m) * L;
    edge = std::max(edge, std::hypot(chi_re[row], chi_im[row]));
    edge = std::max(edge, std::hypot(chi_re[row + L - 1], chi_im[row + L - 1]));
  }
  if (edge > 1e-9)
    throw tolerance_error(
        "wigner_from_weyl: Weyl function not decayed at lattice edge (|chi| = " +
        std::to_string(edge) + "); grid too coarse or too small for this state");

  // pass 1: contract Q against p  ->  T[k][m] = sum_l chi[m][l] e^{i Q_l p_k / hbar}
  std::vector<double> T_re(static_cast<std::size_t>(L) * M),
      T_im(static_cast<std::size_t>(L) * M);
  std::vector<double> ph_re(std::max(M, L)), ph_im(std::max(M, L));
  for (int k = 0; k < L; ++k) {
    const double pk = grid.p(k);
    fill_phase_row(-Qc * dQ * pk / hbar, dQ * pk / hbar, L, ph_re.data(), ph_im.data());
    for (int m = 0; m < M; ++m) {
      const std::size_t row = static_cast<std::size_t>(m) * L;
      ker.cdotu(L, chi_re.data() + row, chi_im.data() + row, ph_re.data(), ph_im.data(),
                &T_re[static_cast<std::size_t>(k) * M + m],
                &T_im[static_cast<std::size_t>(k) * M + m]);
    }
  }

  // pass 2: contract P against x with e^{-i P_m x_j / hbar}
  ScalarField out{grid, FieldKind::wigner,
                  std::vector<double>(static_cast<std::size_t>(grid.nx) * grid.np)};
  const double scale = dP * dQ / (4.0 * pi * pi * hbar * hbar);
  double max_imag = 0.0;
  for (int j = 0; j < grid.nx; ++j) {
    const double xj = grid.x(j);
    fill_phase_row(Pc * dP * xj / hbar, -dP * xj / hbar, M, ph_re.data(), ph_im.data());
    for (int k = 0; k < L; ++k) {
      double re, im;
      const std::size_t row = static_cast<std::size_t>(k) * M;
      ker.cdotu(M, T_re.data() + row, T_im.data() + row, ph_re.data(), ph_im.data(),
                &re, &im);
      out.at(j, k) = re * scale;
      max_imag = std::max(max_imag, std::abs(im * scale));
    }
  }
  if (max_imag > 1e-8 / hbar)
    throw tolerance_error(
        "wigner_from_weyl: imaginary residue " + std::to_string(max_imag) +
        " above tolerance; grid does not capture the state");
  check_wigner_bounds(out, "wigner_from_weyl");
  return out;
}

namespace {

struct DirectQuadrature {
  std::vector<double> y;
  std::vector<double> weight;  // trapezoid
  double dy;
};

DirectQuadrature make_y_grid(double support_radius, double sigma, double p_max_abs,
                             double hbar) {
  const double Y = 2.0 * support_radius;
  const double p_band = (support_radius / sigma) * hbar / (2.0 * sigma);
  const double dy_target =
      std::min(sigma / 8.0, pi * hbar / (6.0 * (p_max_abs + p_band)));
  int ny = 2 * static_cast<int>(std::ceil(Y / dy_target)) + 1;
  DirectQuadrature q;
  q.dy = 2.0 * Y / (ny - 1);
  q.y.resize(ny);
  q.weight.resize(ny);
  for (int i = 0; i < ny; ++i) {
    q.y[i] = -Y + i * q.dy;
    q.weight[i] = (i == 0 || i == ny - 1) ? 0.5 : 1.0;
  }
  return q;
}

// Shared skeleton: W[j][k] = (dy / 2 pi hbar) sum_i f_j(y_i) e^{i p_k y_i / hbar}
// with f_j supplied per x row. Returns split complex result.
void direct_transform(const PhaseGrid& grid, const DirectQuadrature& q,
                      const std::function<void(double, double*, double*)>& fill_row,
                      std::vector<double>& out_re, std::vector<double>& out_im) {
  const auto& ker = kernels::active();
  const int ny = static_cast<int>(q.y.size());
  const double hbar = grid.hbar;

  // phase tables for every p_k over the y nodes
  std::vector<double> ph_re(static_cast<std::size_t>(grid.np) * ny),
      ph_im(static_cast<std::size_t>(grid.np) * ny);
  for (int k = 0; k < grid.np; ++k) {
    fill_phase_row(grid.p(k) * q.y[0] / hbar, grid.p(k) * q.dy / hbar, ny,
                   ph_re.data() + static_cast<std::size_t>(k) * ny,
                   ph_im.data() + static_cast<std::size_t>(k) * ny);
  }

  out_re.assign(static_cast<std::size_t>(grid.nx) * grid.np, 0.0);
  out_im.assign(static_cast<std::size_t>(grid.nx) * grid.np, 0.0);
  std::vector<double> f_re(ny), f_im(ny);
  const double scale = q.dy / (2.0 * pi * hbar);
  for (int j = 0; j < grid.nx; ++j) {
    fill_row(grid.x(j), f_re.data(), f_im.data());
    for (int i = 0; i < ny; ++i) {
      f_re[i] *= q.weight[i];
      f_im[i] *= q.weight[i];
    }
    for (int k = 0; k < grid.np; ++k) {
      double re, im;
      ker.cdotu(ny, f_re.data(), f_im.data(),
                ph_re.data() + static_cast<std::size_t>(k) * ny,
                ph_im.data() + static_cast<std::size_t>(k) * ny, &re, &im);
      const std::size_t idx = static_cast<std::size_t>(j) * grid.np + k;
      out_re[idx] = re * scale;
      out_im[idx] = im * scale;
    }
  }
}

}  // namespace

ScalarField wigner_direct(const PositionWavefunction& psi, const PhaseGrid& grid,
                          const PhysicsConfig& cfg) {
  grid.validate();
  if (!psi.sampler) throw validation_error("wigner_direct: empty wavefunction");
  const double pmx = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
  const DirectQuadrature q = make_y_grid(psi.support_radius, psi.sigma, pmx, cfg.hbar);

  const int ny = static_cast<int>(q.y.size());
  auto fill_row = [&](double x, double* fre, double* fim) {
    for (int i = 0; i < ny; ++i) {
      const complex v = std::conj(psi(x + 0.5 * q.y[i])) * psi(x - 0.5 * q.y[i]);
      fre[i] = v.real();
      fim[i] = v.imag();
    }
  };
  std::vector<double> re, im;
  direct_transform(grid, q, fill_row, re, im);

  double max_imag = 0.0;
  for (double v : im) max_imag = std::max(max_imag, std::abs(v));
  if (max_imag > 1e-8 / cfg.hbar)
    throw tolerance_error("wigner_direct: imaginary residue " +
                          std::to_string(max_imag) + " above tolerance");
  ScalarField out{grid, FieldKind::wigner, std::move(re)};
  check_wigner_bounds(out, "wigner_direct");
  return out;
}

ScalarField wigner_fock_analytic(int n, const PhaseGrid& grid, const PhysicsConfig& cfg) {
  if (n < 0) throw validation_error("wigner_fock_analytic: n must be >= 0");
  grid.validate();
  const double sx = cfg.sigma_x(), sp = cfg.sigma_p();
  std::vector<double> ux(grid.nx), ex(grid.nx), up(grid.np), ep(grid.np);
  for (int j = 0; j < grid.nx; ++j) {
    ux[j] = grid.x(j) * grid.x(j) / (2.0 * sx * sx);
    ex[j] = std::exp(-ux[j]);
  }
  for (int k = 0; k < grid.np; ++k) {
    up[k] = grid.p(k) * grid.p(k) / (2.0 * sp * sp);
    ep[k] = std::exp(-up[k]);
  }
  const double pref = (n % 2 == 0 ? 1.0 : -1.0) / (pi * cfg.hbar);
  ScalarField out{grid, FieldKind::wigner,
                  std::vector<double>(static_cast<std::size_t>(grid.nx) * grid.np)};
  for (int j = 0; j < grid.nx; ++j) {
    for (int k = 0; k < grid.np; ++k) {
      const double z = 2.0 * (ux[j] + up[k]);
      double lm1 = 0.0, l = 1.0;  // L_{-1}, L_0 at z
      for (int q = 0; q < n; ++q) {
        const double lp1 = ((2.0 * q + 1.0 - z) * l - q * lm1) / (q + 1.0);
        lm1 = l;
        l = lp1;
      }
      out.at(j, k) = pref * l * ex[j] * ep[k];
    }
  }
  return out;
}

ComplexField cross_wigner(int m, int n, const PhaseGrid& grid, const PhysicsConfig& cfg) {
  if (m < 0 || n < 0) throw validation_error("cross_wigner: indices must be >= 0");
  grid.validate();
  const int nmax = std::max(m, n);
  const double sigma = cfg.sigma_x();
  const double radius = (9.0 + 2.0 * std::sqrt(static_cast<double>(nmax))) * sigma;
  const double pmx = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
  // Hermite oscillation scale shrinks like 1/sqrt(n)
  DirectQuadrature q =
      make_y_grid(radius, sigma / (1.0 + std::sqrt(static_cast<double>(nmax))), pmx,
                  cfg.hbar);

  const int ny = static_cast<int>(q.y.size());
  // W_mn integrand: phi_n(x + y/2) phi_m(x - y/2)
  std::vector<double> col_plus(nmax + 1), col_minus(nmax + 1);
  auto fill_row = [&](double x, double* fre, double* fim) {
    for (int i = 0; i < ny; ++i) {
      hermite_column(nmax + 1, sigma, x + 0.5 * q.y[i], col_plus.data());
      hermite_column(nmax + 1, sigma, x - 0.5 * q.y[i], col_minus.data());
      fre[i] = col_plus[n] * col_minus[m];
      fim[i] = 0.0;
    }
  };
  ComplexField out;
  out.grid = grid;
  direct_transform(grid, q, fill_row, out.re, out.im);
  return out;
}

Marginal marginal_x(const ScalarField& field) {
  if (field.kind != FieldKind::wigner)
    throw validation_error("marginal_x: field kind must be wigner");
  Marginal mg;
  mg.coord.resize(field.grid.nx);
  mg.density.resize(field.grid.nx);
  double mn = 0.0, mass = 0.0;
  for (int j = 0; j < field.grid.nx; ++j) {
    double acc = 0.0;
    for (int k = 0; k < field.grid.np; ++k) acc += field.at(j, k);
    mg.coord[j] = field.grid.x(j);
    mg.density[j] = acc * field.grid.dp();
    mn = std::min(mn, mg.density[j]);
    mass += mg.density[j];
  }
  mg.min_value = mn;
  mg.mass = mass * field.grid.dx();
  mg.consistent = mn >= -1e-8;
  return mg;
}

Marginal marginal_p(const ScalarField& field) {
  if (field.kind != FieldKind::wigner)
    throw validation_error("marginal_p: field kind must be wigner");
  Marginal mg;
  mg.coord.resize(field.grid.np);
  mg.density.resize(field.grid.np);
  double mn = 0.0, mass = 0.0;
  for (int k = 0; k < field.grid.np; ++k) {
    double acc = 0.0;
    for (int j = 0; j < field.grid.nx; ++j) acc += field.at(j, k);
    mg.coord[k] = field.grid.p(k);
    mg.density[k] = acc * field.grid.dx();
    mn = std::min(mn, mg.density[k]);
    mass += mg.density[k];
  }
  mg.min_value = mn;
  mg.mass = mass * field.grid.dp();
  mg.consistent = mn >= -1e-8;
  return mg;
}

double expectation(const ScalarField& field,
                   const std::function<double(double, double)>& f) {
  double acc = 0.0;
  for (int j = 0; j < field.grid.nx; ++j) {
    const double x = field.grid.x(j);
    for (int k = 0; k < field.grid.np; ++k)
      acc += f(x, field.grid.p(k)) * field.at(j, k);
  }
  return acc * field.grid.area_element();
}

ExpectationReport expectation_report(const ScalarField& field,
                                     const std::function<double(double, double)>& f) {
  const double fine = expectation(field, f);
  double coarse = 0.0;
  for (int j = 0; j < field.grid.nx; j += 2) {
    const double x = field.grid.x(j);
    for (int k = 0; k < field.grid.np; k += 2)
      coarse += f(x, field.grid.p(k)) * field.at(j, k);
  }
  coarse *= 4.0 * field.grid.area_element();
  return {fine, std::abs(fine - coarse) / 3.0};
}

}  // namespace qps
