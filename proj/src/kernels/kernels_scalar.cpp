#include "jsfkit/kernels.hpp"

namespace jsfkit::kern {

namespace {

void s_vmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void s_vmul_real(cplx* dst, const cplx* a, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * w[i];
}

void s_vaxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

void s_vscale(cplx* x, double alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void s_vabs2(double* dst, const cplx* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = src[i].real(), im = src[i].imag();
    dst[i] = re * re + im * im;
  }
}

double s_block_abs2(const cplx* src, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = src[i].real(), im = src[i].imag();
    s += re * re + im * im;
  }
  return s;
}

cplx s_dotc(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

}  // namespace

namespace detail {
const KernelTable scalar_table = {
    s_vmul, s_vmul_real, s_vaxpy, s_vscale, s_vabs2, s_block_abs2, s_dotc,
};
}  // namespace detail

}  // namespace jsfkit::kern
