#include "qps/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "qps/common.hpp"

namespace qps::kernels {

namespace {

const KernelTable* select_default() {
  if (const char* env = std::getenv("QPS_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_table();
    if (std::strcmp(env, "avx2") == 0) {
      if (const KernelTable* t = avx2_table()) return t;
      throw validation_error("QPS_SIMD=avx2 requested but AVX2+FMA is unavailable");
    }
    // anything else, including "auto", falls through to detection
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = select_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

void force_backend(Backend b) {
  switch (b) {
    case Backend::scalar:
      g_active.store(&scalar_table(), std::memory_order_release);
      break;
    case Backend::avx2: {
      const KernelTable* t = avx2_table();
      if (!t) throw validation_error("AVX2 backend unavailable on this CPU/build");
      g_active.store(t, std::memory_order_release);
      break;
    }
  }
}

}  // namespace qps::kernels
