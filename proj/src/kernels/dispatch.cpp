#include <atomic>
#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <thread>
#include <vector>

#include "jsfkit/kernels.hpp"

namespace jsfkit::kern {

namespace {

bool cpu_has_avx2() {
#if defined(JSFKIT_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Backend> g_requested{Backend::Auto};

Backend resolve(Backend b) {
  if (b == Backend::Auto) return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
  return b;
}

}  // namespace

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !cpu_has_avx2())
    throw std::runtime_error("AVX2 backend requested but not available on this CPU");
  g_requested.store(b);
}

Backend active_backend() { return resolve(g_requested.load()); }

const char* backend_name() {
  switch (active_backend()) {
    case Backend::Avx2: return "avx2";
    default: return "scalar";
  }
}

namespace detail {
const KernelTable& table() {
#ifdef JSFKIT_BUILD_AVX2
  if (active_backend() == Backend::Avx2) return avx2_table;
#endif
  return scalar_table;
}
}  // namespace detail

void vmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  detail::table().vmul(dst, a, b, n);
}
void vmul_real(cplx* dst, const cplx* a, const double* w, std::size_t n) {
  detail::table().vmul_real(dst, a, w, n);
}
void vaxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  detail::table().vaxpy(y, alpha, x, n);
}
void vscale(cplx* x, double alpha, std::size_t n) {
  detail::table().vscale(x, alpha, n);
}
void vabs2(double* dst, const cplx* src, std::size_t n) {
  detail::table().vabs2(dst, src, n);
}
cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  return detail::table().dotc(a, b, n);
}

// Pairwise tree over fixed 256-element blocks. The block partition does not
// depend on the backend, so scalar and SIMD runs sum the same sub-terms.
double sum_abs2(const cplx* src, std::size_t n) {
  const auto& t = detail::table();
  if (n <= kBlock) return t.block_abs2(src, n);
  std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::size_t off = b * kBlock;
    partial[b] = t.block_abs2(src + off, std::min(kBlock, n - off));
  }
  std::size_t m = nblocks;
  while (m > 1) {
    std::size_t h = (m + 1) / 2;
    for (std::size_t i = 0; i < m / 2; ++i) partial[i] = partial[2 * i] + partial[2 * i + 1];
    if (m % 2) partial[m / 2] = partial[m - 1];
    m = h;
  }
  return partial[0];
}

void vadd_compensated(cplx* acc, cplx* comp, const cplx* x, std::size_t n) {
  auto* a = reinterpret_cast<double*>(acc);
  auto* c = reinterpret_cast<double*>(comp);
  const auto* v = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    double y = v[i] - c[i];
    double t = a[i] + y;
    c[i] = (t - a[i]) - y;
    a[i] = t;
  }
}

void parallel_rows(std::size_t rows, void* ctx,
                   void (*f)(void*, std::size_t, std::size_t)) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = std::min<std::size_t>(hw ? hw : 1, rows);
  if (nthreads <= 1 || rows < 32) {
    f(ctx, 0, rows);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::size_t chunk = (rows + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(rows, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=] { f(ctx, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

void matmul_nn(cplx* C, const cplx* A, const cplx* B,
               std::size_t m, std::size_t k, std::size_t n) {
  struct Ctx {
    cplx* C; const cplx* A; const cplx* B; std::size_t k, n;
  } ctx{C, A, B, k, n};
  parallel_rows(m, &ctx, [](void* p, std::size_t lo, std::size_t hi) {
    auto& c = *static_cast<Ctx*>(p);
    const auto& t = detail::table();
    for (std::size_t i = lo; i < hi; ++i) {
      cplx* Ci = c.C + i * c.n;
      std::fill(Ci, Ci + c.n, cplx{});
      const cplx* Ai = c.A + i * c.k;
      for (std::size_t kk = 0; kk < c.k; ++kk) {
        if (Ai[kk] == cplx{}) continue;
        t.vaxpy(Ci, Ai[kk], c.B + kk * c.n, c.n);
      }
    }
  });
}

void matmul_nh(cplx* C, const cplx* A, const cplx* B,
               std::size_t m, std::size_t k, std::size_t n) {
  struct Ctx {
    cplx* C; const cplx* A; const cplx* B; std::size_t k, n;
  } ctx{C, A, B, k, n};
  parallel_rows(m, &ctx, [](void* p, std::size_t lo, std::size_t hi) {
    auto& c = *static_cast<Ctx*>(p);
    const auto& t = detail::table();
    for (std::size_t i = lo; i < hi; ++i) {
      const cplx* Ai = c.A + i * c.k;
      cplx* Ci = c.C + i * c.n;
      for (std::size_t j = 0; j < c.n; ++j)
        Ci[j] = t.dotc(c.B + j * c.k, Ai, c.k);  // sum_k A[i,k] conj(B[j,k])
    }
  });
}

}  // namespace jsfkit::kern
