#include "qps/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "qps/cells.hpp"
#include "qps/detector.hpp"
#include "qps/io.hpp"
#include "qps/nonclass.hpp"
#include "qps/smoothing.hpp"
#include "qps/wigner.hpp"

namespace qps::verify {

namespace {

PhysicsConfig base_config(int cutoff) {
  PhysicsConfig cfg;
  cfg.fock_cutoff = cutoff;
  return cfg;  // hbar = 1, sigma = 1/sqrt(2)
}

// Reference negativity volume of the cat(a = 3 sigma) Wigner function,
// computed by the adaptive-quadrature oracle in the test suite
// (tests/test_oracles.cpp pins the same constant).
constexpr double kCatNegativityVolume = 0.2401990786;

struct TestState {
  std::string name;
  FockDensityMatrix rho;
  PositionWavefunction psi;
  PhaseGrid grid;
  ScalarField w_weyl;
  ScalarField w_direct;
};

// The five-state regression set at cutoff 48, with both Wigner routes.
const std::vector<TestState>& test_states() {
  static const std::vector<TestState> states = [] {
    const PhysicsConfig cfg = base_config(48);
    const double s = cfg.sigma;
    std::vector<TestState> out;
    auto add = [&](const std::string& name, FockDensityMatrix rho,
                   PositionWavefunction psi) {
      TestState ts{name, std::move(rho), std::move(psi), {}, {}, {}};
      ts.grid = auto_grid(ts.rho, cfg, 192, 192);
      ts.w_weyl = wigner_from_weyl(ts.rho, ts.grid, cfg);
      ts.w_direct = wigner_direct(ts.psi, ts.grid, cfg);
      out.push_back(std::move(ts));
    };
    add("vacuum", fock_state(0, cfg), gaussian_ground(s));
    add("fock1", fock_state(1, cfg), fock_wavefunction(1, s));
    add("fock3", fock_state(3, cfg), fock_wavefunction(3, s));
    add("coherent1", coherent_state(complex(1.0, 0.0), cfg),
        coherent_wavefunction(complex(1.0, 0.0), s, cfg.hbar));
    add("cat3", wavefunction_to_density(cat_state(3.0 * s, s), cfg),
        cat_state(3.0 * s, s));
    return out;
  }();
  return states;
}

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

// --- criterion 1: Fock-1 closed form on the prescribed grid ---------------

CheckResult check_fock1_closed_form() {
  const auto t0 = std::chrono::steady_clock::now();
  const PhysicsConfig cfg = base_config(32);
  const double sx = cfg.sigma_x(), sp = cfg.sigma_p();
  const PhaseGrid grid{-6.0 * sx, 6.0 * sx, -6.0 * sp, 6.0 * sp, 256, 256, cfg.hbar};
  const ScalarField w = wigner_from_weyl(fock_state(1, cfg), grid, cfg);
  const ScalarField ref = wigner_fock_analytic(1, grid, cfg);

  double maxdiff = 0.0;
  for (std::size_t i = 0; i < w.values.size(); ++i)
    maxdiff = std::max(maxdiff, std::abs(w.values[i] - ref.values[i]));

  // zero crossings along x must sit on the ellipse within one grid cell
  const double cell_tol = grid.dx() / sx + grid.dp() / sp;
  double worst_r = 0.0;
  int crossings = 0;
  for (int k = 0; k < grid.np; ++k) {
    const double p = grid.p(k);
    for (int j = 0; j + 1 < grid.nx; ++j) {
      const double a = w.at(j, k), b = w.at(j + 1, k);
      if (a == 0.0 || a * b >= 0.0) continue;
      if (std::max(std::abs(a), std::abs(b)) < 1e-8) continue;  // tail noise
      const double xz = grid.x(j) - a * grid.dx() / (b - a);
      const double r = std::sqrt(xz * xz / (sx * sx) + p * p / (sp * sp));
      worst_r = std::max(worst_r, std::abs(r - 1.0));
      ++crossings;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass =
      maxdiff <= 1e-6 && crossings > 10 && worst_r <= cell_tol && seconds < 10.0;
  return {"fock1-closed-form", pass,
          "max|W - closed form| = " + num(maxdiff) + ", zero-set ellipse dev = " +
              num(worst_r) + " (tol " + num(cell_tol) + ", " +
              std::to_string(crossings) + " crossings), " + num(seconds) + " s",
          seconds};
}

// --- criterion 2: route equivalence ----------------------------------------

CheckResult check_route_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  double worst = 0.0;
  for (const TestState& ts : test_states()) {
    double d = 0.0;
    for (std::size_t i = 0; i < ts.w_weyl.values.size(); ++i)
      d = std::max(d, std::abs(ts.w_weyl.values[i] - ts.w_direct.values[i]));
    worst = std::max(worst, d);
    detail += ts.name + "=" + num(d) + " ";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = worst <= 1e-6 && seconds < 60.0;
  return {"route-equivalence", pass,
          "max|weyl-route - direct-route|: " + detail + "(" + num(seconds) + " s)",
          seconds};
}

// --- criterion 3: normalization and marginals -------------------------------

CheckResult check_normalization_marginals() {
  const auto t0 = std::chrono::steady_clock::now();
  const PhysicsConfig cfg = base_config(48);
  bool pass = true;
  std::string detail;
  for (const TestState& ts : test_states()) {
    const double mass = ts.w_weyl.mass();
    const Marginal mx = marginal_x(ts.w_weyl);
    const Marginal mp = marginal_p(ts.w_weyl);

    double dev_x = 0.0;
    for (int j = 0; j < ts.grid.nx; ++j)
      dev_x = std::max(dev_x,
                       std::abs(mx.density[j] - std::norm(ts.psi(ts.grid.x(j)))));

    // momentum density oracle: |FT of psi|^2 by fine trapezoid quadrature
    const double R = ts.psi.support_radius;
    const int nq = 8192;
    const double dxq = 2.0 * R / (nq - 1);
    double dev_p = 0.0;
    for (int k = 0; k < ts.grid.np; ++k) {
      const double p = ts.grid.p(k);
      complex phi = 0.0;
      for (int i = 0; i < nq; ++i) {
        const double x = -R + i * dxq;
        const double wq = (i == 0 || i == nq - 1) ? 0.5 : 1.0;
        phi += wq * ts.psi(x) * std::exp(complex(0.0, -p * x / cfg.hbar));
      }
      phi *= dxq / std::sqrt(2.0 * pi * cfg.hbar);
      dev_p = std::max(dev_p, std::abs(mp.density[k] - std::norm(phi)));
    }

    const bool ok = std::abs(mass - 1.0) <= 1e-6 && mx.min_value >= -1e-8 &&
                    mp.min_value >= -1e-8 && dev_x <= 1e-6 && dev_p <= 1e-6;
    pass = pass && ok;
    detail += ts.name + "(mass-1=" + num(mass - 1.0) + ",dx=" + num(dev_x) +
              ",dp=" + num(dev_p) + ") ";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {"normalization-marginals", pass, detail, seconds};
}

// --- criterion 4: Husimi identity -------------------------------------------

CheckResult check_husimi_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  const PhysicsConfig cfg = base_config(48);
  bool pass = true;
  std::string detail;
  for (const TestState& ts : test_states()) {
    const PhaseGrid g = auto_grid(ts.rho, cfg, 160, 160);
    const HusimiIdentityReport rep = verify_husimi_identity(ts.rho, g, cfg);
    const bool ok = rep.pass && rep.max_discrepancy <= 1e-6 && rep.smoothed_min >= -1e-10;
    pass = pass && ok;
    detail += ts.name + "=" + num(rep.max_discrepancy) + " ";
  }
  // identity breaks below the quantum measure: sigma_d = hbar/4 keeps a
  // strictly negative minimum for Fock-1
  {
    const FockDensityMatrix rho = fock_state(1, cfg);
    const PhaseGrid g = auto_grid(rho, cfg, 160, 160);
    const double s = 1.0 / std::sqrt(2.0);
    const SmoothingKernel sub{cfg.sigma_x() * s, cfg.sigma_p() * s};  // measure hbar/4
    const ScalarField w = wigner_from_weyl(rho, g, cfg);
    const double sub_min = gaussian_smooth(w, sub).min_value();
    const SmoothingKernel wide{cfg.sigma_x() / s, cfg.sigma_p() / s};  // measure hbar
    const HusimiIdentityReport rep = verify_husimi_identity(rho, g, cfg, wide);
    const bool ok = sub_min < -1e-6 && !rep.quantum && !rep.pass &&
                    rep.max_discrepancy > 1e-6;
    pass = pass && ok;
    detail += "fock1@quarter-min=" + num(sub_min) +
              " fock1@double-dev=" + num(rep.max_discrepancy);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {"husimi-identity", pass, detail, seconds};
}

// --- criterion 5: cell machinery --------------------------------------------

CheckResult check_cells() {
  const auto t0 = std::chrono::steady_clock::now();
  const PhysicsConfig cfg = base_config(32);
  const double sx = cfg.sigma_x(), sp = cfg.sigma_p(), hbar = cfg.hbar;
  bool pass = true;
  std::string detail;

  std::vector<FockDensityMatrix> states{fock_state(0, cfg), fock_state(1, cfg),
                                        coherent_state(complex(1.0, 0.0), cfg)};
  // sigma-multiples sit on grid nodes (spacing sigma/20)
  const PhaseGrid grid{-12.0 * sx, 12.0 * sx, -12.0 * sp, 12.0 * sp, 481, 481, hbar};

  const CellPartition part =
      uniform_partition(-12.0 * sx, 12.0 * sx, -12.0 * sp, 12.0 * sp, 4, 4, hbar);
  std::vector<Cell> cells{{-sx, sx, -sp, sp, "central"},
                          {0.0, 2.0 * sx, 0.0, 2.0 * sp, "quadrant"},
                          {-2.0 * sx, 0.0, -sp, sp, "left-band"},
                          {sx, 3.0 * sx, -2.0 * sp, 0.0, "offset"},
                          {-3.0 * sx, 3.0 * sx, sp, 3.0 * sp, "wide-top"}};
  std::vector<Matrix> ops;
  for (const Cell& c : cells) ops.push_back(cell_operator(c, cfg));

  double worst_sum = 0.0, worst_tr = 0.0;
  for (const FockDensityMatrix& rho : states) {
    const ScalarField w = wigner_from_weyl(rho, grid, cfg);
    const PartitionProbabilities probs = partition_probabilities(w, part);
    worst_sum = std::max(worst_sum, std::abs(probs.sum - 1.0));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const double tr = (ops[i] * rho.entries).trace().real();
      const double ci = cell_probability(w, cells[i]).value;
      worst_tr = std::max(worst_tr, std::abs(tr - ci));
    }
  }
  pass = pass && worst_sum <= 1e-6 && worst_tr <= 1e-4;
  detail += "max|sum-1|=" + num(worst_sum) + " max|Tr(U rho)-cellint|=" + num(worst_tr);

  // refinement guard at the quantum bound
  bool refused = false;
  CellPartition small;
  small.coverage = {0.0, 1.0, 0.0, 0.9 * hbar, "coverage"};
  small.cells = {{0.0, 1.0, 0.0, 0.9 * hbar, "c"}};
  try {
    refine_partition(small, "c", Axis::p, hbar);
  } catch (const validation_error&) {
    refused = true;
  }
  bool boundary_ok = true;
  CellPartition exact;
  exact.coverage = {0.0, 1.0, 0.0, hbar, "coverage"};
  exact.cells = {{0.0, 1.0, 0.0, hbar, "c"}};
  try {
    const CellPartition ref = refine_partition(exact, "c", Axis::p, hbar);
    boundary_ok = ref.cells.size() == 2 &&
                  std::abs(ref.cells[0].measure() - 0.5 * hbar) < 1e-12;
  } catch (const error&) {
    boundary_ok = false;
  }
  pass = pass && refused && boundary_ok;
  detail += refused ? ", sub-quantum refinement refused" : ", refinement guard FAILED";

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {"cell-machinery", pass, detail, seconds};
}

// --- criterion 6: detector numbers ------------------------------------------

CheckResult check_detector_numbers() {
  const auto t0 = std::chrono::steady_clock::now();
  const double hbar = 1.0;
  bool pass = true;
  std::string detail;
  const double s3 = std::sqrt(3.0);
  for (double L : {0.5, 2.0 * s3, 10.0}) {
    const DetectorSpec d{L, 0.0, {}, {}, hbar};
    const DetectorUncertainties u = detector_uncertainties(d);
    const bool ok = std::abs(u.sigma_x - L / (2.0 * s3)) <= 1e-15 * L &&
                    std::abs(u.sigma_k - 1.0 / (2.0 * s3)) <= 1e-15 &&
                    std::abs(u.sigma_p - pi * hbar / (s3 * L)) <= 1e-15 / L &&
                    std::abs(u.sigma_x * u.sigma_p - u.product) <= 1e-15 &&
                    u.product > 0.5 * hbar;
    pass = pass && ok;
  }
  const DetectorUncertainties u = detector_uncertainties({1.0, 0.0, {}, {}, hbar});
  detail = "product = " + num(u.product) + " = (pi/3)(hbar/2) > hbar/2, independent of L";
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {"detector-numbers", pass, detail, seconds};
}

// --- criterion 7: nonclassicality ladder -------------------------------------

CheckResult check_nonclassicality() {
  const auto t0 = std::chrono::steady_clock::now();
  const PhysicsConfig cfg = base_config(48);
  bool pass = true;
  std::string detail;

  {
    const ExcitationMinimum em = minimize_excitation(coherent_state(complex(1.0, 0.0), cfg), cfg);
    pass = pass && std::abs(em.n_bar_min) <= 1e-8;
    detail += "coherent n=" + num(em.n_bar_min) + " ";
  }
  for (int n : {1, 2, 3}) {
    const ExcitationMinimum em = minimize_excitation(fock_state(n, cfg), cfg);
    pass = pass && std::abs(em.n_bar_min - n) <= 1e-6;
    detail += "fock" + std::to_string(n) + "=" + num(em.n_bar_min - n) + " ";
  }
  // closed-form agreement on the whole regression set
  double worst_closed = 0.0;
  for (const TestState& ts : test_states()) {
    const StateDeviations dev = state_deviations(ts.rho, cfg);
    const ExcitationMinimum em = minimize_excitation(ts.rho, cfg);
    const double closed = dev.sigma_x() * dev.sigma_p() / cfg.hbar - 0.5;
    worst_closed = std::max(worst_closed, std::abs(em.n_bar_min - closed));
  }
  pass = pass && worst_closed <= 1e-8;
  detail += "max|n_min-closed|=" + num(worst_closed) + " ";

  // cross route: sum n |psi_n|^2 against the operator trace
  double worst_cross = 0.0;
  for (const TestState& ts : test_states()) {
    if (ts.name == "vacuum") continue;
    Eigen::SelfAdjointEigenSolver<Matrix> es(ts.rho.entries);
    if (es.eigenvalues()(ts.rho.dim - 1) < 1.0 - 1e-8) continue;
    const Vector psi = es.eigenvectors().col(ts.rho.dim - 1);
    const ExcitationMinimum em = minimize_excitation(ts.rho, cfg);
    const Matrix a = annihilation_at_scale(ts.rho.dim, cfg, em.sigma_opt);
    const complex alpha = (a * ts.rho.entries).trace();
    const DisplacedExpansion ex = displaced_expansion(psi, alpha, em.sigma_opt, cfg);
    double nsum = 0.0;
    for (int n = 0; n < ts.rho.dim; ++n) nsum += n * std::norm(ex.coefficients(n));
    const double direct = mean_excitation(ts.rho, em.sigma_opt, cfg);
    worst_cross = std::max(worst_cross, std::abs(nsum - direct));
  }
  pass = pass && worst_cross <= 1e-8;
  detail += "max|sum n|psi_n|^2 - <a+a>|=" + num(worst_cross);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {"nonclassicality", pass, detail, seconds};
}

// --- criterion 8: cat-state figure -------------------------------------------

CheckResult check_cat_figure() {
  const auto t0 = std::chrono::steady_clock::now();
  const PhysicsConfig cfg = base_config(48);
  const double s = cfg.sigma, a = 3.0 * s;
  const TestState* cat = nullptr;
  for (const TestState& ts : test_states())
    if (ts.name == "cat3") cat = &ts;
  const ScalarField& w = cat->w_weyl;
  const PhaseGrid& g = cat->grid;

  // positive lobes near x = +-a on the p ~ 0 row
  int k0 = 0;
  for (int k = 0; k < g.np; ++k)
    if (std::abs(g.p(k)) < std::abs(g.p(k0))) k0 = k;
  auto lobe_peak = [&](double sign) {
    double best = -1e300;
    double at = 0.0;
    for (int j = 0; j < g.nx; ++j) {
      if (std::abs(g.x(j) - sign * a) > 2.0 * s) continue;
      if (w.at(j, k0) > best) {
        best = w.at(j, k0);
        at = g.x(j);
      }
    }
    return std::pair<double, double>(best, at);
  };
  const auto [lp, lx] = lobe_peak(1.0);
  const auto [lm, mx] = lobe_peak(-1.0);
  const bool lobes_ok = lp > 0.1 / (pi * cfg.hbar) && lm > 0.1 / (pi * cfg.hbar) &&
                        std::abs(lx - a) < 3.0 * g.dx() + 0.05 * s &&
                        std::abs(mx + a) < 3.0 * g.dx() + 0.05 * s;

  // interference band at x ~ 0: oscillation period in p is pi hbar / a
  int j0 = 0;
  for (int j = 0; j < g.nx; ++j)
    if (std::abs(g.x(j)) < std::abs(g.x(j0))) j0 = j;
  std::vector<double> crossings;
  for (int k = 0; k + 1 < g.np; ++k) {
    const double va = w.at(j0, k), vb = w.at(j0, k + 1);
    if (va == 0.0 || va * vb >= 0.0) continue;
    if (std::max(std::abs(va), std::abs(vb)) < 1e-3) continue;
    crossings.push_back(g.p(k) - va * g.dp() / (vb - va));
  }
  double period = 0.0;
  if (crossings.size() >= 3)
    period = 2.0 * (crossings.back() - crossings.front()) /
             static_cast<double>(crossings.size() - 1);
  const double period_ref = pi * cfg.hbar / a;
  const bool period_ok = period > 0.0 && std::abs(period - period_ref) <= 0.05 * period_ref;

  const NegativityMeasures neg = negativity_measures(w);
  const bool vol_ok =
      neg.volume > 0.05 && std::abs(neg.volume - kCatNegativityVolume) <= 2e-3;

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = lobes_ok && period_ok && vol_ok;
  return {"cat-figure", pass,
          "lobes at x = " + num(lx) + "/" + num(mx) + " (a = " + num(a) +
              "), fringe period = " + num(period) + " (ref " + num(period_ref) +
              "), negativity volume = " + num(neg.volume) + " (ref " +
              num(kCatNegativityVolume) + ")",
          seconds};
}

using CheckFn = CheckResult (*)();

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks{
      {"fock1-closed-form", check_fock1_closed_form},
      {"route-equivalence", check_route_equivalence},
      {"normalization-marginals", check_normalization_marginals},
      {"husimi-identity", check_husimi_identity},
      {"cell-machinery", check_cells},
      {"detector-numbers", check_detector_numbers},
      {"nonclassicality", check_nonclassicality},
      {"cat-figure", check_cat_figure},
  };
  return checks;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& names) {
  std::vector<CheckResult> results;
  for (const auto& [name, fn] : registry()) {
    if (!names.empty() &&
        std::find(names.begin(), names.end(), name) == names.end())
      continue;
    try {
      results.push_back(fn());
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("exception: ") + e.what(), 0.0});
    }
  }
  return results;
}

int run_and_print(std::ostream& os, const std::vector<std::string>& names) {
  int failures = 0;
  for (const CheckResult& r : run_checks(names)) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.detail << "]\n";
    if (!r.pass) ++failures;
  }
  return failures;
}

}  // namespace qps::verify
