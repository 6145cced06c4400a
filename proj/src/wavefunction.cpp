#include "qps/wavefunction.hpp"

#include <cmath>

namespace qps {

void hermite_column(int count, double sigma, double x, double* out) {
  const double xi = x / (sigma * std::sqrt(2.0));
  const double envelope =
      std::pow(2.0 * pi * sigma * sigma, -0.25) * std::exp(-0.5 * xi * xi);
  double hm1 = 0.0, h = 1.0;  // h_{-1}, h_0
  for (int n = 0; n < count; ++n) {
    out[n] = envelope * h;
    const double hp1 = std::sqrt(2.0 / (n + 1.0)) * xi * h -
                       std::sqrt(n / (n + 1.0)) * hm1;
    hm1 = h;
    h = hp1;
  }
}

double hermite_function(int n, double sigma, double x) {
  std::vector<double> col(n + 1);
  hermite_column(n + 1, sigma, x, col.data());
  return col[n];
}

PositionWavefunction gaussian_ground(double sigma) {
  if (!(sigma > 0.0)) throw validation_error("gaussian_ground: sigma must be > 0");
  const double norm = std::pow(2.0 * pi * sigma * sigma, -0.25);
  return {[=](double x) -> complex {
            return norm * std::exp(-x * x / (4.0 * sigma * sigma));
          },
          sigma, 9.0 * sigma, true};
}

PositionWavefunction fock_wavefunction(int n, double sigma) {
  if (n < 0) throw validation_error("fock_wavefunction: n must be >= 0");
  if (!(sigma > 0.0)) throw validation_error("fock_wavefunction: sigma must be > 0");
  return {[=](double x) -> complex { return hermite_function(n, sigma, x); },
          sigma, (9.0 + 2.0 * std::sqrt(static_cast<double>(n))) * sigma,
          n % 2 == 0};
}

PositionWavefunction cat_state(double a, double sigma) {
  if (!(sigma > 0.0)) throw validation_error("cat_state: sigma must be > 0");
  if (a < 0.0) throw validation_error("cat_state: separation a must be >= 0");
  const double norm = std::pow(2.0 * pi * sigma * sigma, -0.25);
  const double denom =
      std::sqrt(2.0 * (1.0 + std::exp(-a * a / (2.0 * sigma * sigma))));
  return {[=](double x) -> complex {
            const double g1 = std::exp(-(x - a) * (x - a) / (4.0 * sigma * sigma));
            const double g2 = std::exp(-(x + a) * (x + a) / (4.0 * sigma * sigma));
            return norm * (g1 + g2) / denom;
          },
          sigma, a + 9.0 * sigma, true};
}

PositionWavefunction coherent_wavefunction(complex alpha, double sigma, double hbar) {
  if (!(sigma > 0.0)) throw validation_error("coherent_wavefunction: sigma must be > 0");
  const double sigma_p = hbar / (2.0 * sigma);
  const double x0 = 2.0 * sigma * alpha.real();
  const double p0 = 2.0 * sigma_p * alpha.imag();
  const double norm = std::pow(2.0 * pi * sigma * sigma, -0.25);
  return {[=](double x) -> complex {
            const double dx = x - x0;
            return norm * std::exp(-dx * dx / (4.0 * sigma * sigma)) *
                   std::exp(complex(0.0, p0 * x / hbar));
          },
          sigma, std::abs(x0) + 9.0 * sigma, false};
}

double wavefunction_norm(const PositionWavefunction& psi, int samples) {
  const double R = psi.support_radius;
  const double dx = 2.0 * R / (samples - 1);
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = -R + i * dx;
    const double w = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
    acc += w * std::norm(psi(x));
  }
  return std::sqrt(acc * dx);
}

}  // namespace qps
