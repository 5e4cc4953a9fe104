#pragma once

// Data-parallel inner loops on interleaved complex<double> arrays.
// Every operation has a scalar reference implementation and, on x86-64
// with AVX2+FMA, a vectorized variant selected at runtime. The two are
// equivalence-tested against each other in tests/test_kernels.cpp.

#include <complex>
#include <cstddef>

namespace jsfkit::kern {

using cplx = std::complex<double>;

enum class Backend { Auto, Scalar, Avx2 };

// Select the kernel backend. Auto picks the widest ISA the CPU supports.
// Requesting Avx2 on a CPU without it throws.
void set_backend(Backend b);
Backend active_backend();
const char* backend_name();

// dst[i] = a[i] * b[i]
void vmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
// dst[i] = a[i] * w[i]   (real weights / masks)
void vmul_real(cplx* dst, const cplx* a, const double* w, std::size_t n);
// y[i] += alpha * x[i]
void vaxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
// x[i] *= alpha
void vscale(cplx* x, double alpha, std::size_t n);
// dst[i] = |src[i]|^2
void vabs2(double* dst, const cplx* src, std::size_t n);
// sum_i |src[i]|^2, fixed pairwise block tree (block = 256 elements)
double sum_abs2(const cplx* src, std::size_t n);
// sum_i conj(a[i]) * b[i]
cplx dotc(const cplx* a, const cplx* b, std::size_t n);

// Row-major complex matrix products built on the primitives above.
// C[m x n] = A[m x k] * B[k x n]
void matmul_nn(cplx* C, const cplx* A, const cplx* B,
               std::size_t m, std::size_t k, std::size_t n);
// C[m x n] = A[m x k] * B^H, with B stored [n x k] row-major
void matmul_nh(cplx* C, const cplx* A, const cplx* B,
               std::size_t m, std::size_t k, std::size_t n);

// Kahan-compensated accumulation: acc[i] += x[i] with carry comp[i].
void vadd_compensated(cplx* acc, cplx* comp, const cplx* x, std::size_t n);

// Static row partition across hardware threads; f(row_begin, row_end).
// Each row's result is independent, so output is thread-count invariant.
void parallel_rows(std::size_t rows, void* ctx,
                   void (*f)(void*, std::size_t, std::size_t));

struct KernelTable {
  void (*vmul)(cplx*, const cplx*, const cplx*, std::size_t);
  void (*vmul_real)(cplx*, const cplx*, const double*, std::size_t);
  void (*vaxpy)(cplx*, cplx, const cplx*, std::size_t);
  void (*vscale)(cplx*, double, std::size_t);
  void (*vabs2)(double*, const cplx*, std::size_t);
  double (*block_abs2)(const cplx*, std::size_t);   // single block, <= kBlock
  cplx (*dotc)(const cplx*, const cplx*, std::size_t);
};

inline constexpr std::size_t kBlock = 256;

namespace detail {
extern const KernelTable scalar_table;
#ifdef JSFKIT_BUILD_AVX2
extern const KernelTable avx2_table;
#endif
const KernelTable& table();
}  // namespace detail

}  // namespace jsfkit::kern
