#pragma once

#include <cstddef>
#include <vector>

namespace qps::kernels {

// Arithmetic inner loops of the toolkit, factored out so that a scalar
// reference build and a SIMD build of each loop can be swapped at runtime
// and checked against each other in the test suite.

// Unconjugated dot product of two split-complex vectors:
//   out = sum_i (ar[i] + i ai[i]) * (br[i] + i bi[i]).
// Backbone of the discrete Fourier passes and coherent-overlap reductions.
using cdotu_fn = void (*)(std::size_t n, const double* ar, const double* ai,
                          const double* br, const double* bi,
                          double* out_re, double* out_im);

// "Same"-size 1-D convolution with zero extension:
//   dst[i] = sum_t src[i + t - center] * taps[t],  src taken as 0 outside [0, n).
// Backbone of the separable Gaussian smoothing.
using conv1d_fn = void (*)(const double* src, std::size_t n, const double* taps,
                           std::size_t ntaps, std::ptrdiff_t center, double* dst);

// Precomputed per-state tables for evaluating Tr[D(lambda) rho] in the Fock
// basis. Entries are stored per diagonal d = m - n >= 0 of rho:
//   w_d[n] = rho(n, n+d) * sqrt(n! / (n+d)!),
// and the trace at a point with u = |lambda|^2 is
//   e^{-u/2} * [ A_0 + sum_{d>=1} ( A_d + (-1)^d conj(A_d) ) ],
//   A_d = lambda^d * sum_n w_d[n] * L_n^{(d)}(u).
// All-zero diagonals are dropped at build time.
struct WeylDiagonals {
  struct Diagonal {
    int d = 0;
    std::vector<double> wre, wim;
  };
  int dim = 0;
  std::vector<Diagonal> diags;
  // u beyond which the trace is provably below ~1e-30 and is returned as 0;
  // evaluating the recurrence there would risk overflow for nothing.
  double u_cutoff = 0.0;
};

// Batched displacement-operator trace:
//   out[i] = eu[i] * trace_polynomial(u[i], lambda[i]),
// where eu[i] must be exp(-u[i]/2) (callers exploit separability of u when
// filling it). Points with u[i] > tab.u_cutoff yield exactly 0.
using weyl_trace_fn = void (*)(const WeylDiagonals& tab, std::size_t npts,
                               const double* u, const double* eu,
                               const double* lre, const double* lim,
                               double* out_re, double* out_im);

struct KernelTable {
  const char* name;
  cdotu_fn cdotu;
  conv1d_fn conv1d;
  weyl_trace_fn weyl_trace;
};

enum class Backend { scalar, avx2 };

const KernelTable& scalar_table();
bool avx2_supported();
// Null when this build has no AVX2 variant or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

// Active table. Selection order: force_backend() if called, else the
// QPS_SIMD environment variable ("scalar" | "avx2" | "auto"), else the
// widest supported variant.
const KernelTable& active();
void force_backend(Backend b);

// Fills tab.u_cutoff for the given maximal Laguerre degree.
double weyl_trace_u_cutoff(int max_degree);

}  // namespace qps::kernels
