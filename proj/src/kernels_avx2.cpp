#include "qps/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define QPS_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#endif

namespace qps::kernels {

#if QPS_HAVE_AVX2_BUILD

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void cdotu_avx2(std::size_t n, const double* ar, const double* ai,
                const double* br, const double* bi,
                double* out_re, double* out_im) {
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a0r = _mm256_loadu_pd(ar + i), a1r = _mm256_loadu_pd(ar + i + 4);
    const __m256d a0i = _mm256_loadu_pd(ai + i), a1i = _mm256_loadu_pd(ai + i + 4);
    const __m256d b0r = _mm256_loadu_pd(br + i), b1r = _mm256_loadu_pd(br + i + 4);
    const __m256d b0i = _mm256_loadu_pd(bi + i), b1i = _mm256_loadu_pd(bi + i + 4);
    re0 = _mm256_fmadd_pd(a0r, b0r, re0);
    re0 = _mm256_fnmadd_pd(a0i, b0i, re0);
    im0 = _mm256_fmadd_pd(a0r, b0i, im0);
    im0 = _mm256_fmadd_pd(a0i, b0r, im0);
    re1 = _mm256_fmadd_pd(a1r, b1r, re1);
    re1 = _mm256_fnmadd_pd(a1i, b1i, re1);
    im1 = _mm256_fmadd_pd(a1r, b1i, im1);
    im1 = _mm256_fmadd_pd(a1i, b1r, im1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d vr = _mm256_loadu_pd(ar + i), vi = _mm256_loadu_pd(ai + i);
    const __m256d wr = _mm256_loadu_pd(br + i), wi = _mm256_loadu_pd(bi + i);
    re0 = _mm256_fmadd_pd(vr, wr, re0);
    re0 = _mm256_fnmadd_pd(vi, wi, re0);
    im0 = _mm256_fmadd_pd(vr, wi, im0);
    im0 = _mm256_fmadd_pd(vi, wr, im0);
  }
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsum(_mm256_add_pd(im0, im1));
  for (; i < n; ++i) {
    re += ar[i] * br[i] - ai[i] * bi[i];
    im += ar[i] * bi[i] + ai[i] * br[i];
  }
  *out_re = re;
  *out_im = im;
}

void conv1d_avx2(const double* src, std::size_t n, const double* taps,
                 std::size_t ntaps, std::ptrdiff_t center, double* dst) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t nt = static_cast<std::ptrdiff_t>(ntaps);
  // interior block where no tap falls outside [0, n)
  std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, center);
  std::ptrdiff_t hi = std::min<std::ptrdiff_t>(sn, sn + center - nt + 1);
  if (lo > hi) lo = hi = 0;

  auto edge = [&](std::ptrdiff_t i) {
    const std::ptrdiff_t t0 = std::max<std::ptrdiff_t>(0, center - i);
    const std::ptrdiff_t t1 = std::min<std::ptrdiff_t>(nt, center - i + sn);
    double acc = 0.0;
    const double* s = src + (i - center);
    for (std::ptrdiff_t t = t0; t < t1; ++t) acc += s[t] * taps[t];
    dst[i] = acc;
  };

  for (std::ptrdiff_t i = 0; i < lo; ++i) edge(i);
  std::ptrdiff_t i = lo;
  for (; i + 4 <= hi; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    const double* s = src + (i - center);
    for (std::ptrdiff_t t = 0; t < nt; ++t) {
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(s + t), _mm256_set1_pd(taps[t]), acc);
    }
    _mm256_storeu_pd(dst + i, acc);
  }
  for (; i < hi; ++i) edge(i);
  for (i = std::max(i, hi); i < sn; ++i) edge(i);
}

void weyl_trace_avx2(const WeylDiagonals& tab, std::size_t npts,
                     const double* u, const double* eu,
                     const double* lre, const double* lim,
                     double* out_re, double* out_im) {
  const __m256d cut = _mm256_set1_pd(tab.u_cutoff);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= npts; i += 4) {
    const __m256d uraw = _mm256_loadu_pd(u + i);
    const __m256d keep = _mm256_cmp_pd(uraw, cut, _CMP_LE_OQ);
    // clamp masked-out lanes so the recurrence cannot overflow
    const __m256d ui = _mm256_min_pd(uraw, cut);
    const __m256d lr = _mm256_loadu_pd(lre + i);
    const __m256d li = _mm256_loadu_pd(lim + i);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    __m256d pow_re = one;
    __m256d pow_im = _mm256_setzero_pd();
    int pow_d = 0;
    for (const auto& diag : tab.diags) {
      const int d = diag.d;
      const std::size_t len = diag.wre.size();
      __m256d lnm1 = _mm256_setzero_pd();
      __m256d ln = one;
      __m256d s_re = _mm256_set1_pd(diag.wre[0]);
      __m256d s_im = _mm256_set1_pd(diag.wim[0]);
      for (std::size_t k = 1; k < len; ++k) {
        const double nk = static_cast<double>(k - 1);
        const __m256d c0 = _mm256_set1_pd(2.0 * nk + 1.0 + d);
        const __m256d c1 = _mm256_set1_pd((nk + d) / (nk + 1.0));
        const __m256d inv = _mm256_set1_pd(1.0 / (nk + 1.0));
        const __m256d t = _mm256_mul_pd(_mm256_sub_pd(c0, ui), ln);
        const __m256d lnp1 =
            _mm256_fnmadd_pd(c1, lnm1, _mm256_mul_pd(t, inv));
        lnm1 = ln;
        ln = lnp1;
        s_re = _mm256_fmadd_pd(_mm256_set1_pd(diag.wre[k]), ln, s_re);
        s_im = _mm256_fmadd_pd(_mm256_set1_pd(diag.wim[k]), ln, s_im);
      }
      if (d == 0) {
        acc_re = _mm256_add_pd(acc_re, s_re);
        acc_im = _mm256_add_pd(acc_im, s_im);
        continue;
      }
      while (pow_d < d) {
        const __m256d pr = _mm256_fnmadd_pd(pow_im, li, _mm256_mul_pd(pow_re, lr));
        pow_im = _mm256_fmadd_pd(pow_re, li, _mm256_mul_pd(pow_im, lr));
        pow_re = pr;
        ++pow_d;
      }
      const __m256d a_re = _mm256_fnmadd_pd(pow_im, s_im, _mm256_mul_pd(pow_re, s_re));
      const __m256d a_im = _mm256_fmadd_pd(pow_re, s_im, _mm256_mul_pd(pow_im, s_re));
      const __m256d two = _mm256_set1_pd(2.0);
      if (d % 2 == 0) {
        acc_re = _mm256_fmadd_pd(two, a_re, acc_re);
      } else {
        acc_im = _mm256_fmadd_pd(two, a_im, acc_im);
      }
    }
    const __m256d e = _mm256_loadu_pd(eu + i);
    acc_re = _mm256_and_pd(_mm256_mul_pd(e, acc_re), keep);
    acc_im = _mm256_and_pd(_mm256_mul_pd(e, acc_im), keep);
    _mm256_storeu_pd(out_re + i, acc_re);
    _mm256_storeu_pd(out_im + i, acc_im);
  }
  if (i < npts) {
    scalar_table().weyl_trace(tab, npts - i, u + i, eu + i, lre + i, lim + i,
                              out_re + i, out_im + i);
  }
}

const KernelTable avx2_kernels{"avx2", cdotu_avx2, conv1d_avx2, weyl_trace_avx2};

}  // namespace

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const KernelTable* avx2_table() {
  return avx2_supported() ? &avx2_kernels : nullptr;
}

#else  // !QPS_HAVE_AVX2_BUILD

bool avx2_supported() { return false; }
const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace qps::kernels
