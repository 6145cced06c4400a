#include "qps/weyl.hpp"

#include <cmath>

#include "qps/displacement.hpp"

namespace qps {

kernels::WeylDiagonals weyl_trace_tables(const FockDensityMatrix& rho) {
  kernels::WeylDiagonals tab;
  tab.dim = rho.dim;
  int max_deg = 0;
  for (int d = 0; d < rho.dim; ++d) {
    // w[n] = rho(n, n+d) * sqrt(n!/(n+d)!)
    double g = 1.0;
    for (int j = 1; j <= d; ++j) g /= std::sqrt(static_cast<double>(j));
    kernels::WeylDiagonals::Diagonal diag;
    diag.d = d;
    int last = -1;
    for (int n = 0; n + d < rho.dim; ++n) {
      if (n > 0) g *= std::sqrt(static_cast<double>(n) / static_cast<double>(n + d));
      const complex w = rho.entries(n, n + d) * g;
      diag.wre.push_back(w.real());
      diag.wim.push_back(w.imag());
      if (std::abs(w.real()) > 0.0 || std::abs(w.imag()) > 0.0) last = n;
    }
    if (last < 0) continue;  // diagonal empty, skip entirely
    diag.wre.resize(last + 1);
    diag.wim.resize(last + 1);
    max_deg = std::max(max_deg, last + d);
    tab.diags.push_back(std::move(diag));
  }
  tab.u_cutoff = kernels::weyl_trace_u_cutoff(std::max(1, max_deg));
  return tab;
}

complex weyl_characteristic(const kernels::WeylDiagonals& tab, double P, double Q,
                            const PhysicsConfig& cfg) {
  const complex lambda = displacement_lambda(P, Q, cfg);
  const double u = std::norm(lambda);
  const double eu = std::exp(-0.5 * u);
  const double lre = lambda.real(), lim = lambda.imag();
  double re = 0.0, im = 0.0;
  kernels::active().weyl_trace(tab, 1, &u, &eu, &lre, &lim, &re, &im);
  return {re, im};
}

complex weyl_characteristic(const FockDensityMatrix& rho, double P, double Q,
                            const PhysicsConfig& cfg) {
  if (!std::isfinite(P) || !std::isfinite(Q))
    throw validation_error("weyl_characteristic: P, Q must be finite");
  return weyl_characteristic(weyl_trace_tables(rho), P, Q, cfg);
}

complex weyl_function(const FockDensityMatrix& rho, double P, double Q,
                      const PhysicsConfig& cfg) {
  return weyl_characteristic(rho, P, Q, cfg) / (2.0 * pi * cfg.hbar);
}

}  // namespace qps
