#include "oracles.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace oracles {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double adaptive_simpson_2d(const std::function<double(double, double)>& f, double ax,
                           double bx, double ay, double by, double tol) {
  auto inner = [&](double x) {
    return adaptive_simpson([&](double y) { return f(x, y); }, ay, by, 0.1 * tol);
  };
  return adaptive_simpson(inner, ax, bx, tol);
}

Matrix expm(const Matrix& m) { return m.exp(); }

double vacuum_wigner(double x, double p, const qps::PhysicsConfig& cfg) {
  const double sx = cfg.sigma_x(), sp = cfg.sigma_p();
  return std::exp(-x * x / (2.0 * sx * sx) - p * p / (2.0 * sp * sp)) /
         (qps::pi * cfg.hbar);
}

double fock1_wigner(double x, double p, const qps::PhysicsConfig& cfg) {
  const double sx = cfg.sigma_x(), sp = cfg.sigma_p();
  const double r2 = x * x / (sx * sx) + p * p / (sp * sp);
  return (r2 - 1.0) * std::exp(-0.5 * r2) / (qps::pi * cfg.hbar);
}

double cat_wigner(double x, double p, double a, const qps::PhysicsConfig& cfg) {
  const double s = cfg.sigma_x(), sp = cfg.sigma_p(), hbar = cfg.hbar;
  const double n2 = 1.0 / (2.0 * (1.0 + std::exp(-a * a / (2.0 * s * s))));
  const double env = std::exp(-x * x / (2.0 * s * s) - p * p / (2.0 * sp * sp));
  return n2 * (vacuum_wigner(x - a, p, cfg) + vacuum_wigner(x + a, p, cfg) +
               2.0 / (qps::pi * hbar) * env * std::cos(2.0 * a * p / hbar));
}

double poisson_tail(double mean, int dim) {
  double term = std::exp(-mean), cum = term;
  for (int n = 1; n < dim; ++n) {
    term *= mean / n;
    cum += term;
  }
  return std::max(0.0, 1.0 - cum);
}

double squeezed_vacuum_coefficient(int two_m, double r) {
  if (two_m % 2 != 0) return 0.0;
  const int m = two_m / 2;
  double ratio = 1.0;  // sqrt((2m)!) / (2^m m!)
  for (int k = 1; k <= m; ++k) ratio *= std::sqrt((2.0 * k - 1.0) / (2.0 * k));
  return std::pow(std::tanh(r), m) * ratio / std::sqrt(std::cosh(r));
}

double cat_var_x(double a, double sigma) {
  const double e = std::exp(-a * a / (2.0 * sigma * sigma));
  return ((sigma * sigma + a * a) + sigma * sigma * e) / (1.0 + e);
}

double cat_var_p(double a, double sigma, double hbar) {
  const double e = std::exp(-a * a / (2.0 * sigma * sigma));
  const double sp2 = hbar * hbar / (4.0 * sigma * sigma);
  return sp2 * (1.0 + e * (1.0 - a * a / (sigma * sigma))) / (1.0 + e);
}

double hermite_explicit(int n, double sigma, double x) {
  const double xi = x / (sigma * std::sqrt(2.0));
  const double env =
      std::pow(2.0 * qps::pi * sigma * sigma, -0.25) * std::exp(-0.5 * xi * xi);
  switch (n) {
    case 0: return env;
    case 1: return env * 2.0 * xi / std::sqrt(2.0);
    case 2: return env * (4.0 * xi * xi - 2.0) / std::sqrt(8.0);
    case 3: return env * (8.0 * xi * xi * xi - 12.0 * xi) / std::sqrt(48.0);
    default: throw qps::validation_error("hermite_explicit: n must be <= 3");
  }
}

}  // namespace oracles
