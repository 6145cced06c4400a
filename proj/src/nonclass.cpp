#include "qps/nonclass.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qps/displacement.hpp"
#include "qps/wigner.hpp"

namespace qps {

StateDeviations state_deviations(const FockDensityMatrix& rho, const PhysicsConfig& cfg) {
  if (rho.tail_weight > 10.0 * cfg.tol_trace)
    throw tolerance_error("state_deviations: truncation tail " +
                          std::to_string(rho.tail_weight) + " too large");
  return quadrature_moments(rho, cfg);
}

double mean_excitation(const FockDensityMatrix& rho, double sigma,
                       const PhysicsConfig& cfg) {
  if (!(sigma > 0.0)) throw validation_error("mean_excitation: sigma must be > 0");
  const Matrix a = annihilation_at_scale(rho.dim, cfg, sigma);
  const complex mean_a = (a * rho.entries).trace();
  const double n = (Matrix(a.adjoint()) * a * rho.entries).trace().real();
  return n - std::norm(mean_a);
}

ExcitationMinimum minimize_excitation(const FockDensityMatrix& rho,
                                      const PhysicsConfig& cfg) {
  const StateDeviations dev = state_deviations(rho, cfg);
  auto nbar = [&](double t) { return mean_excitation(rho, std::exp(t), cfg); };

  double lo = std::log(dev.sigma_x() / 10.0);
  double hi = std::log(dev.sigma_x() * 10.0);
  // expand until the minimum is interior
  for (int tries = 0; tries < 60; ++tries) {
    const double fl = nbar(lo), fh = nbar(hi);
    const double fm = nbar(0.5 * (lo + hi));
    if (fm <= fl && fm <= fh) break;
    if (fl < fh) lo -= 1.0; else hi += 1.0;
    if (tries == 59)
      throw tolerance_error("minimize_excitation: bracket expansion failed");
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = nbar(c), fd = nbar(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = nbar(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = nbar(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {std::exp(t), nbar(t)};
}

DisplacedExpansion displaced_expansion(const Vector& state, complex alpha, double sigma,
                                       const PhysicsConfig& cfg, double deficit_tol) {
  if (!(sigma > 0.0)) throw validation_error("displaced_expansion: sigma must be > 0");
  const int dim = static_cast<int>(state.size());
  const double r = std::log(sigma / cfg.sigma);
  // D_sigma(alpha) = D(mu) in the configured basis
  const complex mu = alpha * std::cosh(r) + std::conj(alpha) * std::sinh(r);
  Vector w = displacement_matrix_lambda(dim, mu).adjoint() * state;
  if (std::abs(r) > 1e-14) w = squeeze_matrix(dim, r).adjoint() * w;
  const double deficit = 1.0 - w.squaredNorm();
  if (deficit > deficit_tol)
    throw tolerance_error("displaced_expansion: completeness deficit " +
                          std::to_string(deficit) + " exceeds " +
                          std::to_string(deficit_tol) + "; increase fock_cutoff");
  return {std::move(w), deficit};
}

NegativityMeasures negativity_measures(const ScalarField& field) {
  if (field.kind != FieldKind::wigner)
    throw validation_error("negativity_measures: field kind must be wigner");
  const double mass = field.mass();
  if (std::abs(mass - 1.0) > 1e-6)
    throw validation_error("negativity_measures: field mass " + std::to_string(mass) +
                           " not within 1e-6 of 1");
  double mn = 0.0, vol = 0.0;
  for (double v : field.values) {
    mn = std::min(mn, v);
    if (v < 0.0) vol -= v;
  }
  return {mn, vol * field.grid.area_element()};
}

NonclassicalityReport analyze_nonclassicality(const FockDensityMatrix& rho,
                                              const PhysicsConfig& cfg,
                                              std::optional<PhaseGrid> grid) {
  const StateDeviations dev = state_deviations(rho, cfg);
  const ExcitationMinimum em = minimize_excitation(rho, cfg);
  if (em.n_bar_min < -1e-10)
    throw tolerance_error("analyze_nonclassicality: negative minimized excitation " +
                          std::to_string(em.n_bar_min));
  const double closed = dev.sigma_x() * dev.sigma_p() / cfg.hbar - 0.5;
  if (std::abs(em.n_bar_min - closed) > 1e-8 * std::max(1.0, std::abs(closed)))
    throw tolerance_error(
        "analyze_nonclassicality: minimized excitation " + std::to_string(em.n_bar_min) +
        " disagrees with sigma_x sigma_p / hbar - 1/2 = " + std::to_string(closed));

  const PhaseGrid g = grid ? *grid : auto_grid(rho, cfg);
  const NegativityMeasures neg = negativity_measures(wigner_from_weyl(rho, g, cfg));

  NonclassicalityReport rep;
  rep.sigma_x_state = dev.sigma_x();
  rep.sigma_p_state = dev.sigma_p();
  rep.mean_x = dev.mean_x;
  rep.mean_p = dev.mean_p;
  rep.sigma_opt = em.sigma_opt;
  rep.n_bar_min = std::max(0.0, em.n_bar_min);
  rep.negativity_min = neg.min_value;
  rep.negativity_volume = neg.volume;
  rep.classical = rep.n_bar_min < 1e-6;

  // pure states: overlap with the best quasiclassical approximation
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries);
  const int last = rho.dim - 1;
  if (es.eigenvalues()(last) > 1.0 - 1e-8) {
    const Vector psi = es.eigenvectors().col(last);
    const Matrix a_opt = annihilation_at_scale(rho.dim, cfg, em.sigma_opt);
    const complex alpha = (a_opt * rho.entries).trace();
    const DisplacedExpansion ex = displaced_expansion(psi, alpha, em.sigma_opt, cfg);
    rep.psi0_sq = std::norm(ex.coefficients(0));
    rep.distance_sq = 1.0 - *rep.psi0_sq;
  }
  return rep;
}

}  // namespace qps
