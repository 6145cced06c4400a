#include "qps/grid.hpp"

#include <algorithm>
#include <cmath>

namespace qps {

void PhaseGrid::validate() const {
  if (nx < 8 || np < 8) throw validation_error("PhaseGrid: nx and np must be >= 8");
  if (!(x_max > x_min) || !(p_max > p_min))
    throw validation_error("PhaseGrid: bounds must be strictly increasing");
  if (!(hbar > 0.0)) throw validation_error("PhaseGrid: hbar must be > 0");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(p_min) ||
      !std::isfinite(p_max))
    throw validation_error("PhaseGrid: bounds must be finite");
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::wigner: return "wigner";
    case FieldKind::husimi: return "husimi";
    case FieldKind::smoothed: return "smoothed";
  }
  return "unknown";
}

FieldKind field_kind_from_string(const std::string& s) {
  if (s == "wigner") return FieldKind::wigner;
  if (s == "husimi") return FieldKind::husimi;
  if (s == "smoothed") return FieldKind::smoothed;
  throw validation_error("unknown field kind: " + s);
}

double ScalarField::mass() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc * grid.area_element();
}

double ScalarField::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double ScalarField::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

void ScalarField::validate() const {
  grid.validate();
  if (values.size() != static_cast<std::size_t>(grid.nx) * grid.np)
    throw validation_error("ScalarField: value count does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw validation_error("ScalarField: non-finite value");
  if (kind == FieldKind::husimi && min_value() < -1e-12)
    throw tolerance_error("ScalarField: husimi field has negative value " +
                          std::to_string(min_value()));
}

PhaseGrid auto_grid(const FockDensityMatrix& rho, const PhysicsConfig& cfg,
                    int nx, int np, double pad) {
  const QuadratureMoments m = quadrature_moments(rho, cfg);
  const double sn = std::sqrt(static_cast<double>(rho.effective_max_n()));
  const double hx = (6.0 + 2.0 * sn) * cfg.sigma_x() + 2.0 * m.sigma_x() + pad * cfg.sigma_x();
  const double hp = (6.0 + 2.0 * sn) * cfg.sigma_p() + 2.0 * m.sigma_p() + pad * cfg.sigma_p();
  return {m.mean_x - hx, m.mean_x + hx, m.mean_p - hp, m.mean_p + hp, nx, np, cfg.hbar};
}

PhaseGrid auto_grid_for_cutoff(const PhysicsConfig& cfg, int nx, int np) {
  const double sn = std::sqrt(static_cast<double>(cfg.fock_cutoff - 1));
  const double hx = (6.0 + 2.0 * sn) * cfg.sigma_x();
  const double hp = (6.0 + 2.0 * sn) * cfg.sigma_p();
  return {-hx, hx, -hp, hp, nx, np, cfg.hbar};
}

ScalarField mix_fields(const ScalarField& a, const ScalarField& b, double w) {
  if (!(a.grid == b.grid)) throw validation_error("mix_fields: grid mismatch");
  ScalarField out{a.grid, a.kind, std::vector<double>(a.values.size())};
  for (std::size_t i = 0; i < a.values.size(); ++i)
    out.values[i] = w * a.values[i] + (1.0 - w) * b.values[i];
  return out;
}

}  // namespace qps
