#include "qps/kernels.hpp"

#include <cmath>

namespace qps::kernels {

namespace {

void cdotu_scalar(std::size_t n, const double* ar, const double* ai,
                  const double* br, const double* bi,
                  double* out_re, double* out_im) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += ar[i] * br[i] - ai[i] * bi[i];
    im += ar[i] * bi[i] + ai[i] * br[i];
  }
  *out_re = re;
  *out_im = im;
}

void conv1d_scalar(const double* src, std::size_t n, const double* taps,
                   std::size_t ntaps, std::ptrdiff_t center, double* dst) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t nt = static_cast<std::ptrdiff_t>(ntaps);
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    // clip the tap range so src is only read inside [0, n)
    const std::ptrdiff_t t0 = std::max<std::ptrdiff_t>(0, center - i);
    const std::ptrdiff_t t1 = std::min<std::ptrdiff_t>(nt, center - i + sn);
    double acc = 0.0;
    const double* s = src + (i - center);
    for (std::ptrdiff_t t = t0; t < t1; ++t) acc += s[t] * taps[t];
    dst[i] = acc;
  }
}

void weyl_trace_scalar(const WeylDiagonals& tab, std::size_t npts,
                       const double* u, const double* eu,
                       const double* lre, const double* lim,
                       double* out_re, double* out_im) {
  for (std::size_t i = 0; i < npts; ++i) {
    const double ui = u[i];
    if (!(ui <= tab.u_cutoff)) {
      out_re[i] = 0.0;
      out_im[i] = 0.0;
      continue;
    }
    double acc_re = 0.0, acc_im = 0.0;
    double pow_re = 1.0, pow_im = 0.0;  // lambda^d, advanced incrementally
    int pow_d = 0;
    for (const auto& diag : tab.diags) {
      const int d = diag.d;
      const std::size_t len = diag.wre.size();
      // s = sum_n w[n] * L_n^{(d)}(u)
      double lnm1 = 0.0, ln = 1.0;  // L_{-1}, L_0
      double s_re = diag.wre[0], s_im = diag.wim[0];
      for (std::size_t k = 1; k < len; ++k) {
        const double nk = static_cast<double>(k - 1);
        const double lnp1 =
            ((2.0 * nk + 1.0 + d - ui) * ln - (nk + d) * lnm1) / (nk + 1.0);
        lnm1 = ln;
        ln = lnp1;
        s_re += diag.wre[k] * ln;
        s_im += diag.wim[k] * ln;
      }
      if (d == 0) {
        acc_re += s_re;
        acc_im += s_im;
        continue;
      }
      while (pow_d < d) {
        const double pr = pow_re * lre[i] - pow_im * lim[i];
        pow_im = pow_re * lim[i] + pow_im * lre[i];
        pow_re = pr;
        ++pow_d;
      }
      // A_d + (-1)^d conj(A_d) with A_d = lambda^d * s
      const double a_re = pow_re * s_re - pow_im * s_im;
      const double a_im = pow_re * s_im + pow_im * s_re;
      if (d % 2 == 0) {
        acc_re += 2.0 * a_re;
      } else {
        acc_im += 2.0 * a_im;
      }
    }
    out_re[i] = eu[i] * acc_re;
    out_im[i] = eu[i] * acc_im;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{"scalar", cdotu_scalar, conv1d_scalar,
                             weyl_trace_scalar};
  return t;
}

double weyl_trace_u_cutoff(int max_degree) {
  // Smallest u with n*ln(u) - ln(n!) - u/2 < -80 for n = max_degree, i.e. the
  // dominant Laguerre monomial times e^{-u/2} is below ~1e-34. Bisection on a
  // function that is eventually decreasing in u.
  const double n = std::max(1, max_degree);
  auto logterm = [&](double uu) {
    return n * std::log(uu) - std::lgamma(n + 1.0) - 0.5 * uu;
  };
  double lo = std::max(8.0 * n, 60.0);
  double hi = lo;
  while (logterm(hi) > -80.0 && hi < 1e6) hi *= 2.0;
  if (logterm(lo) <= -80.0) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (logterm(mid) > -80.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace qps::kernels
