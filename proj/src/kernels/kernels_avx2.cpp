// AVX2+FMA variants. Two interleaved complex<double> per 256-bit lane.
// Compiled with -mavx2 -mfma; only reachable after the runtime CPU check
// in dispatch.cpp.

#include <immintrin.h>

#include "jsfkit/kernels.hpp"

namespace jsfkit::kern {

namespace {

// [ar*br - ai*bi, ar*bi + ai*br] for both packed complex values
inline __m256d cmul(__m256d a, __m256d b) {
  __m256d a_re = _mm256_movedup_pd(a);                 // ar ar
  __m256d a_im = _mm256_permute_pd(a, 0xF);            // ai ai
  __m256d b_sw = _mm256_permute_pd(b, 0x5);            // bi br
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

void a_vmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  std::size_t i = 0;
  auto* d = reinterpret_cast<double*>(dst);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(d + 2 * i, cmul(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void a_vmul_real(cplx* dst, const cplx* a, const double* w, std::size_t n) {
  std::size_t i = 0;
  auto* d = reinterpret_cast<double*>(dst);
  const auto* pa = reinterpret_cast<const double*>(a);
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m128d wv = _mm_loadu_pd(w + i);
    __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wv), 0x50);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(va, ww));
  }
  for (; i < n; ++i) dst[i] = a[i] * w[i];
}

void a_vaxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const __m256d a_re = _mm256_set1_pd(alpha.real());
  const __m256d a_im = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  auto* py = reinterpret_cast<double*>(y);
  const auto* px = reinterpret_cast<const double*>(x);
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vx_sw = _mm256_permute_pd(vx, 0x5);
    __m256d prod = _mm256_fmaddsub_pd(a_re, vx, _mm256_mul_pd(a_im, vx_sw));
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
  }
  const double ar = alpha.real(), ai = alpha.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

void a_vscale(cplx* x, double alpha, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  auto* px = reinterpret_cast<double*>(x);
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(px + 2 * i);
    _mm256_storeu_pd(px + 2 * i, _mm256_mul_pd(v, va));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

void a_vabs2(double* dst, const cplx* src, std::size_t n) {
  std::size_t i = 0;
  const auto* ps = reinterpret_cast<const double*>(src);
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(ps + 2 * i);
    __m256d sq = _mm256_mul_pd(v, v);                  // r0^2 i0^2 r1^2 i1^2
    __m256d sw = _mm256_permute_pd(sq, 0x5);
    __m256d s = _mm256_add_pd(sq, sw);                 // a0 a0 a1 a1
    __m128d lo = _mm256_castpd256_pd128(s);
    __m128d hi = _mm256_extractf128_pd(s, 1);
    _mm_storeu_pd(dst + i, _mm_unpacklo_pd(lo, hi));
  }
  for (; i < n; ++i) {
    const double re = src[i].real(), im = src[i].imag();
    dst[i] = re * re + im * im;
  }
}

double a_block_abs2(const cplx* src, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const auto* ps = reinterpret_cast<const double*>(src);
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(ps + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double re = src[i].real(), im = src[i].imag();
    s += re * re + im * im;
  }
  return s;
}

cplx a_dotc(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_d = _mm256_setzero_pd();  // a.*b        -> re parts
  __m256d acc_x = _mm256_setzero_pd();  // a.*swap(b)  -> im parts
  std::size_t i = 0;
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_d = _mm256_fmadd_pd(va, vb, acc_d);
    acc_x = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_x);
  }
  alignas(32) double d[4], x[4];
  _mm256_store_pd(d, acc_d);
  _mm256_store_pd(x, acc_x);
  // re = sum(ar*br + ai*bi), im = sum(ar*bi - ai*br)
  double re = (d[0] + d[1]) + (d[2] + d[3]);
  double im = (x[0] - x[1]) + (x[2] - x[3]);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

}  // namespace

namespace detail {
const KernelTable avx2_table = {
    a_vmul, a_vmul_real, a_vaxpy, a_vscale, a_vabs2, a_block_abs2, a_dotc,
};
}  // namespace detail

}  // namespace jsfkit::kern
